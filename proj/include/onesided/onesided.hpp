#pragma once

#include "onesided/errors.hpp"
#include "onesided/numeric/bigint.hpp"
#include "onesided/numeric/interval.hpp"
#include "onesided/numeric/mpfr_interval.hpp"
#include "onesided/numeric/surd.hpp"
#include "onesided/cf/alpha_source.hpp"
#include "onesided/cf/expansion.hpp"
#include "onesided/cf/ops.hpp"
#include "onesided/classifier/classify.hpp"
#include "onesided/classifier/oracle.hpp"
#include "onesided/classifier/quadratic.hpp"
#include "onesided/spectral/gaps.hpp"
