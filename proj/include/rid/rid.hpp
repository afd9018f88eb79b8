#pragma once

#include "rid/errors.hpp"
#include "rid/parallel.hpp"
#include "rid/random.hpp"
#include "rid/matrix.hpp"
#include "rid/matrix_io.hpp"
#include "rid/spectral_norm.hpp"
#include "rid/fft.hpp"
#include "rid/srft.hpp"
#include "rid/pivoted_qr.hpp"
#include "rid/interpolative.hpp"
#include "rid/decomposition_io.hpp"
#include "rid/bench.hpp"
