#pragma once

#include "genreason/bits.hpp"
#include "genreason/dataset.hpp"
#include "genreason/engine.hpp"
#include "genreason/error.hpp"
#include "genreason/formula.hpp"
#include "genreason/log_space.hpp"
#include "genreason/mu.hpp"
#include "genreason/query.hpp"
#include "genreason/rational.hpp"
#include "genreason/mnist/auc.hpp"
#include "genreason/mnist/conditional.hpp"
#include "genreason/mnist/experiment.hpp"
#include "genreason/mnist/generate.hpp"
#include "genreason/mnist/idx.hpp"
#include "genreason/mnist/image.hpp"
#include "genreason/mnist/predict.hpp"
