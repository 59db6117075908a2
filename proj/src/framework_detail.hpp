#pragma once

// Answer helpers shared by the sampling framework and the embedding search.

#include <optional>
#include <string>
#include <vector>

#include "vcut/graph.hpp"
#include "vcut/rational.hpp"
#include "vcut/vc_framework.hpp"

namespace vcut::detail {

/// ceil(boost * log2(n) * target), with log2(n) and target floored at 1.
std::size_t sample_count(double boost, std::size_t n, double target);
std::size_t approx_bound(std::size_t k, const Rational& eps);
void note(FrameworkLog* log, const std::string& event);
/// Validates the triple built from witness.first; throws InternalError otherwise.
VcAnswer cut_answer(const DiGraph& g, std::vector<Vertex> separator, Edge witness, std::string origin);
VcAnswer at_least(std::size_t bound, std::string origin);
std::optional<VcAnswer> best_degree_cut(const DiGraph& g);
VcAnswer disconnected_answer(const DiGraph& g);

}  // namespace vcut::detail
