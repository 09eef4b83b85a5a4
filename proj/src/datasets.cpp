#include "subspace_lrr/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

namespace slrr {

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view text, std::size_t line) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty())
    throw ParseError(line, "invalid number '" + std::string(text) + "'");
  if (!std::isfinite(v)) throw ParseError(line, "non-finite value '" + std::string(text) + "'");
  return v;
}

int parse_label(std::string_view text, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError(line, "invalid label '" + std::string(text) + "'");
  if (v < 0) throw ParseError(line, "negative label " + std::string(text));
  return v;
}

}  // namespace

LabeledDataset two_moons(int n_per_moon, double noise_sigma, std::uint64_t seed) {
  if (n_per_moon < 2) throw InvalidParameter("two-moons needs at least 2 points per moon");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) throw InvalidParameter("noise must be >= 0");

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const Index n = 2 * static_cast<Index>(n_per_moon);
  Matrix y(2, n);
  Labels labels(static_cast<std::size_t>(n));
  for (int moon = 0; moon < 2; ++moon)
    for (int i = 0; i < n_per_moon; ++i) {
      const double theta = std::numbers::pi * i / (n_per_moon - 1);
      const Index col = static_cast<Index>(moon) * n_per_moon + i;
      if (moon == 0) {
        y(0, col) = std::cos(theta);
        y(1, col) = std::sin(theta);
      } else {
        y(0, col) = 1.0 - std::cos(theta);
        y(1, col) = 0.5 - std::sin(theta);
      }
      labels[static_cast<std::size_t>(col)] = moon;
    }
  if (noise_sigma > 0.0)
    for (Index col = 0; col < n; ++col)
      for (Index r = 0; r < 2; ++r) y(r, col) += noise_sigma * noise(gen);

  return {ObservationMatrix(std::move(y)), std::move(labels), "two-moons",
          {{"n_per_moon", n_per_moon}, {"noise_sigma", noise_sigma}, {"seed", static_cast<double>(seed)}}};
}

LabeledDataset three_circles(int n_per_circle, std::array<double, 3> radii, double noise_sigma,
                             std::uint64_t seed) {
  if (n_per_circle < 3) throw InvalidParameter("three-circles needs at least 3 points per circle");
  if (!(radii[0] > 0.0) || !(radii[1] > radii[0]) || !(radii[2] > radii[1]) || !std::isfinite(radii[2]))
    throw InvalidParameter("radii must be positive and strictly increasing");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) throw InvalidParameter("noise must be >= 0");

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const Index n = 3 * static_cast<Index>(n_per_circle);
  Matrix y(2, n);
  Labels labels(static_cast<std::size_t>(n));
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < n_per_circle; ++i) {
      const double theta = 2.0 * std::numbers::pi * i / n_per_circle;
      const Index col = static_cast<Index>(c) * n_per_circle + i;
      y(0, col) = radii[c] * std::cos(theta);
      y(1, col) = radii[c] * std::sin(theta);
      labels[static_cast<std::size_t>(col)] = c;
    }
  if (noise_sigma > 0.0)
    for (Index col = 0; col < n; ++col)
      for (Index r = 0; r < 2; ++r) y(r, col) += noise_sigma * noise(gen);

  return {ObservationMatrix(std::move(y)),
          std::move(labels),
          "three-circles",
          {{"n_per_circle", n_per_circle},
           {"radius_0", radii[0]},
           {"radius_1", radii[1]},
           {"radius_2", radii[2]},
           {"noise_sigma", noise_sigma},
           {"seed", static_cast<double>(seed)}}};
}

LabeledDataset linear_subspaces(const SubspaceOptions& opts, std::uint64_t seed) {
  if (opts.n_subspaces < 1 || opts.subspace_dim < 1 || opts.ambient_dim < opts.subspace_dim ||
      opts.n_per_subspace < 1)
    throw InvalidParameter("invalid subspace dataset dimensions");
  if (!(opts.outlier_fraction >= 0.0 && opts.outlier_fraction < 1.0))
    throw InvalidParameter("outlier fraction must lie in [0,1)");

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto gaussian = [&](Index rows, Index cols) {
    Matrix g(rows, cols);
    for (Index c = 0; c < cols; ++c)
      for (Index r = 0; r < rows; ++r) g(r, c) = normal(gen);
    return g;
  };

  const Index n = static_cast<Index>(opts.n_subspaces) * opts.n_per_subspace;
  Matrix y(opts.ambient_dim, n);
  Labels labels(static_cast<std::size_t>(n));
  for (int s = 0; s < opts.n_subspaces; ++s) {
    const Eigen::HouseholderQR<Matrix> qr(gaussian(opts.ambient_dim, opts.subspace_dim));
    const Matrix basis = qr.householderQ() * Matrix::Identity(opts.ambient_dim, opts.subspace_dim);
    Matrix pts = basis * gaussian(opts.subspace_dim, opts.n_per_subspace);
    for (Index c = 0; c < pts.cols(); ++c) pts.col(c).normalize();
    y.middleCols(static_cast<Index>(s) * opts.n_per_subspace, opts.n_per_subspace) = pts;
    for (int i = 0; i < opts.n_per_subspace; ++i)
      labels[static_cast<std::size_t>(s * opts.n_per_subspace + i)] = s;
  }

  LabeledDataset d{ObservationMatrix(Matrix()), std::move(labels), "linear-subspaces",
                   {{"n_subspaces", opts.n_subspaces},
                    {"subspace_dim", opts.subspace_dim},
                    {"ambient_dim", opts.ambient_dim},
                    {"n_per_subspace", opts.n_per_subspace},
                    {"outlier_fraction", opts.outlier_fraction},
                    {"outlier_scale", opts.outlier_scale},
                    {"seed", static_cast<double>(seed)}}};

  const auto n_out = static_cast<Index>(std::lround(opts.outlier_fraction * static_cast<double>(n)));
  std::vector<Index> cols(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) cols[static_cast<std::size_t>(i)] = i;
  std::shuffle(cols.begin(), cols.end(), gen);
  for (Index o = 0; o < n_out; ++o) {
    const Index col = cols[static_cast<std::size_t>(o)];
    Vector v = gaussian(opts.ambient_dim, 1).col(0);
    y.col(col) = opts.outlier_scale * v.normalized();
    d.generator_params["outlier_" + std::to_string(o)] = static_cast<double>(col);
  }
  d.observations = ObservationMatrix(std::move(y));
  return d;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_dataset(const LabeledDataset& d, std::ostream& out) {
  const Matrix& y = d.observations.data();
  if (d.labels && static_cast<Index>(d.labels->size()) != y.cols())
    throw InvalidInput("label count does not match observation count");
  for (Index r = 0; r < y.rows(); ++r) out << (r ? "," : "") << "dim_" << r;
  if (d.labels) out << (y.rows() ? "," : "") << "label";
  out << '\n';
  for (Index c = 0; c < y.cols(); ++c) {
    for (Index r = 0; r < y.rows(); ++r) out << (r ? "," : "") << format_double(y(r, c));
    if (d.labels) out << ',' << (*d.labels)[static_cast<std::size_t>(c)];
    out << '\n';
  }
}

void save_dataset(const LabeledDataset& d, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open '" + path.string() + "' for writing");
  write_dataset(d, out);
  if (!out) throw InvalidInput("failed writing '" + path.string() + "'");
}

LabeledDataset read_dataset(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_commas(line);
  bool labeled = false;
  std::size_t m = 0;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "label" && i + 1 == header.size() && i > 0) {
      labeled = true;
    } else if (header[i] == "dim_" + std::to_string(i)) {
      ++m;
    } else {
      throw ParseError(1, "unexpected header field '" + std::string(header[i]) + "'");
    }
  }
  if (m == 0) throw ParseError(1, "header declares no dimensions");

  std::vector<double> values;
  Labels labels;
  std::size_t lineno = 1;
  Index n = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    const std::size_t expected = m + (labeled ? 1 : 0);
    if (fields.size() != expected)
      throw ParseError(lineno, "expected " + std::to_string(expected) + " fields, found " +
                                   std::to_string(fields.size()));
    for (std::size_t i = 0; i < m; ++i) values.push_back(parse_double(fields[i], lineno));
    if (labeled) labels.push_back(parse_label(fields[m], lineno));
    ++n;
  }

  Matrix y = Eigen::Map<const Matrix>(values.data(), static_cast<Index>(m), n);
  LabeledDataset d{ObservationMatrix(std::move(y)), std::nullopt, name, {}};
  if (labeled) d.labels = std::move(labels);
  return d;
}

LabeledDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  return read_dataset(in, path.stem().string());
}

}  // namespace slrr
