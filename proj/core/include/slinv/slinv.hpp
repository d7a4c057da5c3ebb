#pragma once

#include "slinv/corpus.hpp"
#include "slinv/forward.hpp"
#include "slinv/hl.hpp"
#include "slinv/hp_system.hpp"
#include "slinv/model.hpp"
#include "slinv/ode.hpp"
#include "slinv/poly.hpp"
#include "slinv/quadrature.hpp"
#include "slinv/reconstruction.hpp"
#include "slinv/sigma.hpp"
#include "slinv/types.hpp"

namespace slinv {

inline constexpr const char* version = "0.1.0";

}  // namespace slinv
