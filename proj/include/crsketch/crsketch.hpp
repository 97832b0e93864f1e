#pragma once

// Umbrella header: spectral graph sparsification via randomized (CR) matrix
// multiplication on boundary matrices, with an effective-resistance baseline
// and verifiable additive/multiplicative error guarantees.

#include "crsketch/crmm.hpp"
#include "crsketch/errors.hpp"
#include "crsketch/generators.hpp"
#include "crsketch/graph.hpp"
#include "crsketch/io.hpp"
#include "crsketch/linalg.hpp"
#include "crsketch/metrics.hpp"
#include "crsketch/rng.hpp"
#include "crsketch/sparsify.hpp"
#include "crsketch/sweep.hpp"
