#pragma once

// Umbrella header for the dqspectra library.

#include "dqspectra/error.hpp"
#include "dqspectra/io.hpp"
#include "dqspectra/linalg.hpp"
#include "dqspectra/quat_kernel.hpp"
#include "dqspectra/quat_matrix.hpp"
#include "dqspectra/random.hpp"
#include "dqspectra/scalars.hpp"
#include "dqspectra/spectral.hpp"
#include "dqspectra/svd.hpp"
