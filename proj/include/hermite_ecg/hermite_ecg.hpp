#pragma once

// Umbrella header for the numerical core. The CLI (cli.hpp) and HTTP
// service (service.hpp) are included separately since they pull in CLI11
// and cpp-httplib.

#include "hermite_ecg/analysis.hpp"
#include "hermite_ecg/error.hpp"
#include "hermite_ecg/fixtures.hpp"
#include "hermite_ecg/hermite_functions.hpp"
#include "hermite_ecg/hermite_transform.hpp"
#include "hermite_ecg/ht_optimizer.hpp"
#include "hermite_ecg/json_io.hpp"
#include "hermite_ecg/quadrature.hpp"
#include "hermite_ecg/signal_model.hpp"
#include "hermite_ecg/spectral_compare.hpp"
