#pragma once

#include <array>

#include "yangeval/normal_expr.hpp"
#include "yangeval/param_point.hpp"
#include "yangeval/yangian_gen.hpp"

namespace yangeval {

/// How the central element appears in evaluation images.
enum class CentralBinding { Level, Symbolic };

/// PBW order in which the images of a mode are naturally written.
PbwOrder native_order(EvalMode mode);

/// Image of a degree <= 1 generator under ev (EV points) or ev^+_alpha
/// (EV_PLUS points), with every infinite sum over s >= 0 cut at s <= s_max.
///
/// EV images live in the UpperFirst order, EV_PLUS images in LowerFirst.
/// With CentralBinding::Level the factor c is replaced by the level of p.
NormalExpr ev_image(const YGen& g, const ParamPoint& p, int s_max,
                    CentralBinding binding = CentralBinding::Level);

/// Image of a formal combination of generators.
NormalExpr ev_image(const YComb& x, const ParamPoint& p, int s_max,
                    CentralBinding binding = CentralBinding::Level);

/// The four quadratic sums A_i, B_i, C_i, D_i (1 <= i <= N-1) with r <= s_max,
/// written in the UpperFirst order. s_max < 0 gives zeros.
struct Abcd {
  NormalExpr A, B, C, D;
};
Abcd abcd(int i, int N, int s_max);

}  // namespace yangeval
