#pragma once

#include "qes/error.hpp"
#include "qes/frobenius.hpp"
#include "qes/linalg.hpp"
#include "qes/model.hpp"
#include "qes/polynomial.hpp"
#include "qes/real.hpp"
#include "qes/spectral.hpp"
#include "qes/variational.hpp"
