#pragma once

// Umbrella header for the chen library.

#include "chen/curvature.hpp"
#include "chen/errors.hpp"
#include "chen/quadratic_form.hpp"
#include "chen/rng.hpp"
#include "chen/tensor.hpp"
#include "chen/tensor_io.hpp"
#include "chen/verifier.hpp"
