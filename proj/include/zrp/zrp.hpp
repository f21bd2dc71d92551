#pragma once

#include "coupling.hpp"
#include "errors.hpp"
#include "exp_sum.hpp"
#include "fd_oracle.hpp"
#include "krein_metric.hpp"
#include "operator_model.hpp"
#include "parse.hpp"
#include "resolvent_engine.hpp"
#include "scan.hpp"
#include "spectral_classifier.hpp"
