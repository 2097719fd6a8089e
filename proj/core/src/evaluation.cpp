#include "daz/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "daz/csv.hpp"
#include "daz/errors.hpp"
#include "daz/quadrature.hpp"

namespace daz {

std::vector<double> MarginalTable::midpoints() const {
  std::vector<double> mid(labels());
  for (std::size_t l = 0; l < mid.size(); ++l) mid[l] = 0.5 * (edges[l] + edges[l + 1]);
  return mid;
}

void MarginalTable::validate(double tol) const {
  if (edges.size() < 3) throw InvalidArgument("marginal table: need at least two cells");
  for (std::size_t l = 1; l < edges.size(); ++l)
    if (!(edges[l] > edges[l - 1])) throw InvalidArgument("marginal table: edges must increase");
  if (probs.size() % labels() != 0) throw InvalidArgument("marginal table: ragged probabilities");
  for (std::size_t i = 0; i < coordinates(); ++i) {
    double s = 0.0;
    for (double p : row(i)) {
      if (!(p >= 0.0)) throw InvalidArgument("marginal table: negative probability");
      s += p;
    }
    if (std::abs(s - 1.0) > tol) throw InvalidArgument("marginal table: row does not sum to one");
  }
}

std::vector<double> uniform_edges(double lo, double hi, std::size_t cells) {
  if (cells < 1 || !(hi > lo)) throw InvalidArgument("uniform_edges: invalid range");
  std::vector<double> e(cells + 1);
  const double h = (hi - lo) / static_cast<double>(cells);
  for (std::size_t l = 0; l <= cells; ++l) e[l] = lo + h * static_cast<double>(l);
  e.back() = hi;
  return e;
}

double Histogram1D::bin_left(std::size_t b) const noexcept {
  return lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins());
}

double Histogram1D::bin_right(std::size_t b) const noexcept {
  return b + 1 == bins() ? hi : bin_left(b + 1);
}

std::vector<double> Histogram1D::frequencies() const {
  std::vector<double> f(bins());
  for (std::size_t b = 0; b < bins(); ++b)
    f[b] = static_cast<double>(counts[b]) / static_cast<double>(n);
  return f;
}

namespace {

// Bin of v on an equal-width grid, clipped to the end bins.
inline std::size_t bin_index(double v, double lo, double inv_width, std::size_t bins,
                             bool& clipped) {
  const double pos = (v - lo) * inv_width;
  clipped = !(pos >= 0.0 && pos < static_cast<double>(bins));
  if (!(pos >= 0.0)) return 0;  // also catches NaN
  if (pos >= static_cast<double>(bins)) return bins - 1;
  return static_cast<std::size_t>(pos);
}

}  // namespace

Histogram1D make_histogram(std::span<const double> samples, double lo, double hi,
                           std::size_t bins) {
  if (samples.empty()) throw InvalidArgument("histogram: no samples");
  if (bins < 2 || !(hi > lo)) throw InvalidArgument("histogram: need bins >= 2 and lo < hi");
  Histogram1D h{lo, hi, std::vector<std::uint64_t>(bins, 0), samples.size(), 0};
  const double inv_width = static_cast<double>(bins) / (hi - lo);
  for (double v : samples) {
    bool clipped = false;
    ++h.counts[bin_index(v, lo, inv_width, bins, clipped)];
    h.clipped += clipped;
  }
  return h;
}

std::vector<double> reference_masses(const std::function<double(double)>& density,
                                     double lo, double hi, std::size_t bins,
                                     std::span<const double> kinks) {
  if (bins < 2 || !(hi > lo)) throw InvalidArgument("reference_masses: need bins >= 2 and lo < hi");
  std::vector<double> m(bins);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    const double a = lo + width * static_cast<double>(b);
    const double c = b + 1 == bins ? hi : a + width;
    m[b] = integrate(density, a, c, 1e-10, 1e-15, kinks);
  }
  const double ext = 10.0 * (hi - lo);
  m.front() += integrate(density, lo - ext, lo, 1e-10, 1e-15, kinks);
  m.back() += integrate(density, hi, hi + ext, 1e-10, 1e-15, kinks);
  return m;
}

double tv_between_masses(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionMismatch("tv_between_masses", p.size(), q.size());
  double acc = 0.0;
  for (std::size_t b = 0; b < p.size(); ++b) acc += std::abs(p[b] - q[b]);
  return std::clamp(0.5 * acc, 0.0, 1.0);
}

double tv_distance(const Histogram1D& hist, std::span<const double> masses) {
  return tv_between_masses(hist.frequencies(), masses);
}

double tv_distance_1d(std::span<const double> samples,
                      const std::function<double(double)>& density, double lo,
                      double hi, std::size_t bins) {
  const Histogram1D h = make_histogram(samples, lo, hi, bins);
  return tv_distance(h, reference_masses(density, lo, hi, bins));
}

MarginalTable empirical_marginals(std::span<const double> samples,
                                  std::size_t n_samples, std::size_t dim,
                                  std::vector<double> edges) {
  if (n_samples == 0) throw InvalidArgument("empirical_marginals: no samples");
  if (samples.size() != n_samples * dim)
    throw DimensionMismatch("empirical_marginals samples", n_samples * dim, samples.size());
  MarginalTable table{std::move(edges), {}};
  const std::size_t L = table.labels();
  if (L < 2) throw InvalidArgument("empirical_marginals: need at least two cells");
  const double lo = table.edges.front();
  const double width = (table.edges.back() - lo) / static_cast<double>(L);
  for (std::size_t l = 1; l < L; ++l) {
    if (std::abs(table.edges[l] - (lo + width * static_cast<double>(l))) > 1e-9 * width)
      throw InvalidArgument("empirical_marginals: edges must be equally spaced");
  }
  const double inv_width = static_cast<double>(L) / (table.edges.back() - lo);
  std::vector<std::uint64_t> counts(dim * L, 0);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const double* row = samples.data() + s * dim;
    for (std::size_t i = 0; i < dim; ++i) {
      bool clipped = false;
      ++counts[i * L + bin_index(row[i], lo, inv_width, L, clipped)];
    }
  }
  table.probs.resize(dim * L);
  for (std::size_t k = 0; k < counts.size(); ++k)
    table.probs[k] = static_cast<double>(counts[k]) / static_cast<double>(n_samples);
  return table;
}

double marginal_tv(std::span<const double> states, std::size_t n_chains,
                   std::size_t dim, const MarginalTable& marginals) {
  if (marginals.coordinates() != dim)
    throw DimensionMismatch("marginal_tv coordinates", marginals.coordinates(), dim);
  const MarginalTable empirical =
      empirical_marginals(states, n_chains, dim, marginals.edges);
  double acc = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    acc += tv_between_masses(empirical.row(i), marginals.row(i));
  return acc / static_cast<double>(dim);
}

double marginal_tv(const ChainEnsemble& ensemble, const MarginalTable& marginals) {
  return marginal_tv(ensemble.states, ensemble.n_chains, ensemble.dim, marginals);
}

double mode_mass(std::span<const double> samples, double split) {
  if (samples.empty()) throw InvalidArgument("mode_mass: no samples");
  const auto above = std::count_if(samples.begin(), samples.end(),
                                   [split](double v) { return v > split; });
  return static_cast<double>(above) / static_cast<double>(samples.size());
}

void write_histogram_csv(const std::filesystem::path& path, const Histogram1D& hist,
                         std::span<const double> reference_mass,
                         const std::vector<std::string>& comments) {
  if (reference_mass.size() != hist.bins())
    throw DimensionMismatch("histogram reference masses", hist.bins(), reference_mass.size());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "bin_left,bin_right,count,reference_mass\n";
  for (std::size_t b = 0; b < hist.bins(); ++b) {
    out << format_double(hist.bin_left(b)) << ',' << format_double(hist.bin_right(b)) << ','
        << hist.counts[b] << ',' << format_double(reference_mass[b]) << '\n';
  }
}

}  // namespace daz
