#pragma once

// Umbrella header.

#include "matmean/checks.hpp"
#include "matmean/complex_matrix.hpp"
#include "matmean/compound.hpp"
#include "matmean/eig.hpp"
#include "matmean/format.hpp"
#include "matmean/hermitian_matrix.hpp"
#include "matmean/majorization.hpp"
#include "matmean/matrix_io.hpp"
#include "matmean/means.hpp"
#include "matmean/norms.hpp"
#include "matmean/positive_matrix.hpp"
#include "matmean/report_io.hpp"
#include "matmean/rng.hpp"
#include "matmean/spectral.hpp"
#include "matmean/suite.hpp"
#include "matmean/sweep.hpp"
