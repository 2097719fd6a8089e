#include "daz/bp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "daz/csv.hpp"
#include "daz/errors.hpp"

namespace daz {

namespace {

// In-place shift of a log-vector so that its log-sum-exp is zero.
void log_normalize(std::span<double> v) {
  const double m = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  const double lse = m + std::log(s);
  for (double& x : v) x -= lse;
}

}  // namespace

MarginalTable chain_bp_marginals(const ModelSpec& model, std::size_t labels,
                                 double lo, double hi) {
  if (model.kind != ModelKind::TVChain) throw InvalidArgument("chain BP requires a tv-chain model");
  if (labels < 2) throw InvalidArgument("chain BP: need at least two labels");
  if (!(hi > lo)) throw InvalidArgument("chain BP: need lo < hi");
  model.validate();

  const std::size_t d = model.dim();
  const std::size_t L = labels;
  MarginalTable table{uniform_edges(lo, hi, L), {}};
  const std::vector<double> mid = table.midpoints();

  const double inv_2var = 1.0 / (2.0 * model.sigma * model.sigma);
  std::vector<double> unary(d * L);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t l = 0; l < L; ++l) {
      const double r = mid[l] - model.y[i];
      unary[i * L + l] = -r * r * inv_2var;
    }
  }
  std::vector<double> pair(L * L);
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t b = 0; b < L; ++b) pair[a * L + b] = -model.lambda * std::abs(mid[a] - mid[b]);

  // alpha_i(b) = log sum_a exp(alpha_{i-1}(a) + pair(a, b)) + unary_i(b)
  // beta_i(a)  = log sum_b exp(pair(a, b) + unary_{i+1}(b) + beta_{i+1}(b))
  std::vector<double> alpha(d * L), beta(d * L, 0.0), tmp(L);
  std::copy_n(unary.begin(), L, alpha.begin());
  log_normalize(std::span<double>(alpha).subspan(0, L));
  for (std::size_t i = 1; i < d; ++i) {
    const double* prev = alpha.data() + (i - 1) * L;
    double* cur = alpha.data() + i * L;
    for (std::size_t b = 0; b < L; ++b) {
      double m = -INFINITY;
      for (std::size_t a = 0; a < L; ++a) m = std::max(m, prev[a] + pair[a * L + b]);
      double s = 0.0;
      for (std::size_t a = 0; a < L; ++a) s += std::exp(prev[a] + pair[a * L + b] - m);
      cur[b] = m + std::log(s) + unary[i * L + b];
    }
    log_normalize(std::span<double>(cur, L));
  }
  for (std::size_t i = d - 1; i-- > 0;) {
    const double* next = beta.data() + (i + 1) * L;
    double* cur = beta.data() + i * L;
    for (std::size_t b = 0; b < L; ++b) tmp[b] = unary[(i + 1) * L + b] + next[b];
    for (std::size_t a = 0; a < L; ++a) {
      double m = -INFINITY;
      for (std::size_t b = 0; b < L; ++b) m = std::max(m, pair[a * L + b] + tmp[b]);
      double s = 0.0;
      for (std::size_t b = 0; b < L; ++b) s += std::exp(pair[a * L + b] + tmp[b] - m);
      cur[a] = m + std::log(s);
    }
    log_normalize(std::span<double>(cur, L));
  }

  table.probs.resize(d * L);
  for (std::size_t i = 0; i < d; ++i) {
    std::span<double> row(table.probs.data() + i * L, L);
    for (std::size_t l = 0; l < L; ++l) row[l] = alpha[i * L + l] + beta[i * L + l];
    log_normalize(row);
    double s = 0.0;
    for (double& p : row) {
      p = std::exp(p);
      s += p;
    }
    for (double& p : row) p /= s;
  }
  return table;
}

std::pair<double, double> default_label_range(const ModelSpec& model) {
  if (model.y.empty()) throw InvalidArgument("default_label_range: model has no data");
  const auto [mn, mx] = std::minmax_element(model.y.begin(), model.y.end());
  return {*mn - 4.0 * model.sigma, *mx + 4.0 * model.sigma};
}

void write_marginals_csv(const std::filesystem::path& path, const MarginalTable& table,
                         const std::vector<std::string>& comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  for (const auto& c : comments) out << "# " << c << '\n';
  const auto mid = table.midpoints();
  for (std::size_t l = 0; l < mid.size(); ++l) out << (l ? "," : "") << format_double(mid[l]);
  out << '\n';
  for (std::size_t i = 0; i < table.coordinates(); ++i) {
    const auto r = table.row(i);
    for (std::size_t l = 0; l < r.size(); ++l) out << (l ? "," : "") << format_double(r[l]);
    out << '\n';
  }
}

}  // namespace daz
