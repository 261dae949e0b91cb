#pragma once

#include <string_view>

#include "theta_lab/canonical.hpp"
#include "theta_lab/constants.hpp"
#include "theta_lab/errors.hpp"
#include "theta_lab/geometry.hpp"
#include "theta_lab/io.hpp"
#include "theta_lab/lemma_lab.hpp"
#include "theta_lab/metrics.hpp"
#include "theta_lab/parallel.hpp"
#include "theta_lab/router.hpp"
#include "theta_lab/theta_graph.hpp"

namespace theta_lab {
inline constexpr std::string_view version = "0.1.0";
}
