// genreason: probabilistic consequence over data-grounded worlds, and the
// same conditional used as a digit classifier / image generator on MNIST.
//
// Exit codes: 0 success (or "entails"), 1 usage, parse or I/O error,
// 2 undefined probability, 3 "does-not-entail".

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "genreason/genreason.hpp"

namespace fs = std::filesystem;
using namespace genreason;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUndefined = 2;
constexpr int kExitNotEntailed = 3;

struct LogicOptions {
  std::string kb;
  std::string worlds;
  std::string mu = "exact1";
  std::string query;
  bool empirical = false;
};

struct MnistOptions {
  std::string data_dir = "data/mnist5k";
  std::string train_images, train_labels, test_images, test_labels;
  int threshold = mnist::kDefaultThreshold;
  std::size_t train_size = 0;  // 0: all
  std::size_t test_size = 0;
  unsigned threads = 0;
  std::string out = "out";
  std::string mu;
  std::vector<std::string> mus;
  std::size_t knn = 0;
  std::vector<std::size_t> knns;
  std::vector<std::size_t> sizes;
  std::string pool = "all";
  std::size_t rows = 16;
  bool invert = false;
};

std::vector<Formula> load_kb(const std::string& path, AtomUniverse& universe) {
  if (path.empty()) return {};
  return read_knowledge_base(path, universe);
}

int cmd_prob(const LogicOptions& o) {
  const Dataset ds = read_worlds_csv(o.worlds);
  AtomUniverse universe = ds.universe();
  const MuMode mode = MuMode::parse(o.mu);
  auto kb = load_kb(o.kb, universe);
  auto q = parse_prob_query(o.query, universe);
  q.delta.insert(q.delta.end(), kb.begin(), kb.end());

  const QueryResult r = q.delta.empty() ? prob_marginal(ds, q.alpha, mode)
                                        : prob_conditional(ds, q.alpha, q.delta, mode);
  if (!r.is_defined()) {
    std::cout << "undefined (" << r.reason() << ")\n";
    return kExitUndefined;
  }
  std::cout << mnist::format_number(r.value()) << '\n';
  return kExitOk;
}

int cmd_entail(const LogicOptions& o) {
  if (o.empirical && o.worlds.empty()) throw Error(ErrorCode::Io, "--empirical needs --worlds");
  std::optional<Dataset> ds;
  AtomUniverse universe = AtomUniverse::extensible();
  if (!o.worlds.empty()) {
    ds = read_worlds_csv(o.worlds);
    universe = ds->universe();
  }
  auto kb = load_kb(o.kb, universe);
  auto q = parse_entail_query(o.query, universe);
  q.delta.insert(q.delta.end(), kb.begin(), kb.end());

  const bool entailed = o.empirical ? entails_empirical(*ds, q.delta, q.alpha)
                                    : entails_classical(q.delta, q.alpha, universe);
  std::cout << (entailed ? "entails" : "does-not-entail") << '\n';
  return entailed ? kExitOk : kExitNotEntailed;
}

// ---------------------------------------------------------------------------

struct Pools {
  std::vector<mnist::BinarizedItem> train;
  std::vector<mnist::BinarizedItem> test;
  std::size_t cols = 28;
};

// Finds `stem` or `stem.gz` under `dir`; test files may also use the
// original "t10k-" prefix.
std::string locate(const std::string& explicit_path, const std::string& dir, const std::string& stem) {
  if (!explicit_path.empty()) return explicit_path;
  std::vector<std::string> stems{stem};
  if (stem.rfind("test-", 0) == 0) stems.push_back("t10k-" + stem.substr(5));
  for (const auto& s : stems) {
    for (const char* suffix : {"", ".gz"}) {
      const fs::path p = fs::path(dir) / (s + suffix);
      if (fs::exists(p)) return p.string();
    }
  }
  throw Error(ErrorCode::Io, "no " + stem + "[.gz] under " + dir);
}

std::vector<mnist::BinarizedItem> load_pool(const std::string& images, const std::string& labels, std::size_t limit,
                                            int threshold, std::size_t* cols) {
  auto raw = mnist::read_idx(images, labels);
  if (limit != 0 && limit < raw.size()) raw.resize(limit);
  if (!raw.empty() && cols) *cols = raw.front().cols;
  return mnist::binarize_all(raw, threshold);
}

Pools load_pools(const MnistOptions& o, bool need_test = true) {
  Pools p;
  p.train = load_pool(locate(o.train_images, o.data_dir, "train-images-idx3-ubyte"),
                      locate(o.train_labels, o.data_dir, "train-labels-idx1-ubyte"), o.train_size, o.threshold,
                      &p.cols);
  if (need_test) {
    p.test = load_pool(locate(o.test_images, o.data_dir, "test-images-idx3-ubyte"),
                       locate(o.test_labels, o.data_dir, "test-labels-idx1-ubyte"), o.test_size, o.threshold,
                       nullptr);
  }
  return p;
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  const auto path = (fs::path(dir) / name).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path);
  return out;
}

int cmd_predict(const MnistOptions& o) {
  const Pools p = load_pools(o);
  const auto labels = mnist::labels_of(p.test);
  std::vector<mnist::DigitDistribution> scores;
  std::string method;
  if (o.knn > 0) {
    scores = mnist::knn_batch(p.train, p.test, o.knn, o.threads);
    method = "knn=" + std::to_string(o.knn);
  } else {
    const MuMode mode = MuMode::parse(o.mu.empty() ? "0.99" : o.mu);
    scores = mnist::predict_batch(p.train, p.test, mode, o.threads);
    method = "mu=" + mode.label();
  }
  auto pred = open_output(o.out, "predictions.csv");
  mnist::write_predictions_csv(pred, scores, labels);
  auto roc = open_output(o.out, "roc.csv");
  mnist::write_roc_csv(roc, scores, labels);
  const auto auc = mnist::auc_macro(scores, labels);
  std::cout << method << " train=" << p.train.size() << " test=" << p.test.size()
            << " macro_auc=" << mnist::format_number(auc.macro)
            << " accuracy=" << mnist::format_number(mnist::accuracy(scores, labels)) << '\n';
  for (int c : auc.skipped) std::cout << "skipped digit " << c << " (no positives or no negatives)\n";
  return kExitOk;
}

int cmd_curve(const MnistOptions& o) {
  if (o.sizes.empty()) throw Error(ErrorCode::Io, "--sizes is required");
  const Pools p = load_pools(o);
  std::vector<MuMode> modes;
  for (const auto& m : o.mus) modes.push_back(MuMode::parse(m));
  const auto rows = mnist::learning_curve(p.train, p.test, o.sizes, modes, o.knns, o.threads);
  auto out = open_output(o.out, "curve.csv");
  mnist::write_curve_csv(out, rows);
  mnist::write_curve_csv(std::cout, rows);
  return kExitOk;
}

int cmd_generate(const MnistOptions& o) {
  if (o.pool != "train" && o.pool != "all") throw Error(ErrorCode::Io, "--pool must be train or all");
  Pools p = load_pools(o, o.pool == "all");
  std::vector<mnist::BinarizedItem> items = std::move(p.train);
  items.insert(items.end(), p.test.begin(), p.test.end());
  const MuMode mode = MuMode::parse(o.mu.empty() ? "limit" : o.mu);
  const std::size_t width = items.empty() ? 0 : items.front().pixels.size();
  for (int d = 0; d < mnist::kDigits; ++d) {
    const auto probs = mnist::generate_class_image(items, d, mode);
    std::vector<std::uint8_t> grey(width);
    for (std::size_t j = 0; j < width; ++j) grey[j] = mnist::to_grey(probs[j], o.invert);
    fs::create_directories(o.out);
    const auto path = (fs::path(o.out) / ("digit_" + std::to_string(d) + ".pgm")).string();
    mnist::write_pgm(path, p.cols, width / p.cols, grey);
    std::cout << path << '\n';
  }
  return kExitOk;
}

int cmd_complete(const MnistOptions& o) {
  const Pools p = load_pools(o);
  const MuMode mode = MuMode::parse(o.mu.empty() ? "limit" : o.mu);
  const auto firsts = mnist::first_of_each_digit(p.test);
  for (int d = 0; d < mnist::kDigits; ++d) {
    if (!firsts[static_cast<std::size_t>(d)]) continue;
    const auto& item = p.test[*firsts[static_cast<std::size_t>(d)]];
    const std::size_t width = item.pixels.size();
    const auto observed = mnist::row_prefix_observation(item.pixels, o.rows, p.cols);
    const auto completion = mnist::complete_image(p.train, observed, mode);
    const auto grey = mnist::render_completion(width, observed, completion, o.invert);
    fs::create_directories(o.out);
    const auto name = "complete_digit" + std::to_string(d) + "_rows" + std::to_string(o.rows) + ".pgm";
    const auto path = (fs::path(o.out) / name).string();
    mnist::write_pgm(path, p.cols, width / p.cols, grey);
    char pct[16];
    std::snprintf(pct, sizeof pct, "%.1f", 100.0 * static_cast<double>(observed.size()) / static_cast<double>(width));
    std::cout << path << " observed=" << observed.size() << "/" << width << " (" << pct << "%)\n";
  }
  return kExitOk;
}

void add_mnist_common(CLI::App* cmd, MnistOptions& o) {
  cmd->add_option("--data", o.data_dir, "Directory holding {train,test}-{images-idx3,labels-idx1}-ubyte[.gz]");
  cmd->add_option("--train-images", o.train_images);
  cmd->add_option("--train-labels", o.train_labels);
  cmd->add_option("--test-images", o.test_images);
  cmd->add_option("--test-labels", o.test_labels);
  cmd->add_option("--threshold", o.threshold, "Pixel is on iff greyscale > threshold")->check(CLI::Range(0, 255));
  cmd->add_option("--train-size", o.train_size, "Use only the first N training images");
  cmd->add_option("--test-size", o.test_size, "Use only the first N test images");
  cmd->add_option("--threads", o.threads, "Worker threads (0: hardware concurrency)");
  cmd->add_option("--out", o.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generative reasoning over data-grounded possible worlds"};
  app.require_subcommand(1);

  LogicOptions logic;
  auto* prob = app.add_subcommand("prob", "Probability of a query P(a | d1; d2; ...)");
  prob->add_option("--kb", logic.kb, "Knowledge base, one formula per line; added to the conditions");
  prob->add_option("--worlds", logic.worlds, "Worlds CSV (atom columns + count)")->required();
  prob->add_option("--mu", logic.mu, "exact1, limit, or a decimal in (0.5,1)");
  prob->add_option("query", logic.query)->required();

  auto* entail = app.add_subcommand("entail", "Decide 'd1; d2 |- a'");
  entail->add_option("--kb", logic.kb);
  entail->add_option("--worlds", logic.worlds, "Worlds CSV; fixes the atom universe");
  entail->add_flag("--empirical", logic.empirical, "Empirical (data-supported) consequence");
  entail->add_option("query", logic.query)->required();

  MnistOptions mo;
  auto* mnist_cmd = app.add_subcommand("mnist", "MNIST experiments");
  mnist_cmd->require_subcommand(1);
  auto* predict = mnist_cmd->add_subcommand("predict", "Score the test set; write predictions.csv and roc.csv");
  add_mnist_common(predict, mo);
  predict->add_option("--mu", mo.mu, "exact1, limit or decimal (default 0.99)");
  predict->add_option("--knn", mo.knn, "Use kNN with this k instead");

  auto* curve = mnist_cmd->add_subcommand("curve", "Learning curve: macro-AUC per training size and method");
  add_mnist_common(curve, mo);
  curve->add_option("--sizes", mo.sizes)->delimiter(',')->required();
  curve->add_option("--mu", mo.mus)->delimiter(',');
  curve->add_option("--knn", mo.knns)->delimiter(',');

  auto* generate = mnist_cmd->add_subcommand("generate", "Write p(Pixel_j | Digit_i) as one PGM per digit");
  add_mnist_common(generate, mo);
  generate->add_option("--pool", mo.pool, "train or all (train + test)");
  generate->add_option("--mu", mo.mu, "default limit");
  generate->add_flag("--invert", mo.invert);

  auto* complete = mnist_cmd->add_subcommand("complete", "Complete test images from their first rows");
  add_mnist_common(complete, mo);
  complete->add_option("--rows", mo.rows, "Observed rows from the top");
  complete->add_option("--mu", mo.mu, "default limit");
  complete->add_flag("--invert", mo.invert, "Invert generated pixels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*prob) return cmd_prob(logic);
    if (*entail) return cmd_entail(logic);
    if (*predict) return cmd_predict(mo);
    if (*curve) return cmd_curve(mo);
    if (*generate) return cmd_generate(mo);
    if (*complete) return cmd_complete(mo);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::Undefined ? kExitUndefined : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
