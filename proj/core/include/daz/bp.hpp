#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "daz/marginal_table.hpp"
#include "daz/model.hpp"

namespace daz {

/// Exact marginals of the TV-L2 chain model discretised onto the L cell
/// midpoints of [lo, hi]: unary (x - y_i)^2 / (2 sigma^2), pairwise
/// lambda |x_{i+1} - x_i|. Log-domain forward-backward with per-node
/// normalisation.
MarginalTable chain_bp_marginals(const ModelSpec& model, std::size_t labels,
                                 double lo, double hi);

/// [min(y) - 4 sigma, max(y) + 4 sigma].
std::pair<double, double> default_label_range(const ModelSpec& model);

/// Header row of cell midpoints, then one row of probabilities per
/// coordinate.
void write_marginals_csv(const std::filesystem::path& path, const MarginalTable& table,
                         const std::vector<std::string>& comments = {});

}  // namespace daz
