#pragma once

// Numerical toolkit for dual curvature measures, cone-volume measures and
// subspace concentration ratios of origin-symmetric convex bodies.

#include "dualcurv/bodies.hpp"
#include "dualcurv/body_io.hpp"
#include "dualcurv/concentration.hpp"
#include "dualcurv/cylinder.hpp"
#include "dualcurv/errors.hpp"
#include "dualcurv/linalg.hpp"
#include "dualcurv/lp.hpp"
#include "dualcurv/measures.hpp"
#include "dualcurv/polytope_v.hpp"
#include "dualcurv/quadrature.hpp"
#include "dualcurv/rng.hpp"
#include "dualcurv/subspace.hpp"
#include "dualcurv/unimodal.hpp"
