#pragma once

// Umbrella header.

#include "specfun.hpp"      // gamma family
#include "quadrature.hpp"   // adaptive Gauss-Kronrod
#include "rng.hpp"          // seeded streams
#include "params.hpp"       // theta with cached normalization
#include "distribution.hpp" // BWeibull distribution object
#include "modality.hpp"     // uni/bimodality analysis
#include "entropy.hpp"      // Tsallis / quadratic / Shannon
#include "likelihood.hpp"   // objectives, score, Hessian
#include "harmony.hpp"      // Harmony Search
#include "fisher.hpp"       // Fisher information, standard errors
#include "gof.hpp"          // KS / CVM in both conventions
#include "fit.hpp"          // fit + q selection
#include "io.hpp"           // dataset loading
#include "report.hpp"       // JSON reports
