#pragma once

#include "semcomm/decoding.hpp"
#include "semcomm/distortion_matrix.hpp"
#include "semcomm/errors.hpp"
#include "semcomm/estimation.hpp"
#include "semcomm/experiment.hpp"
#include "semcomm/interchange.hpp"
#include "semcomm/learnability.hpp"
#include "semcomm/probability_vector.hpp"
#include "semcomm/rng.hpp"
#include "semcomm/sampling.hpp"
#include "semcomm/schemes.hpp"
#include "semcomm/semantic_system.hpp"
#include "semcomm/stochastic_matrix.hpp"
