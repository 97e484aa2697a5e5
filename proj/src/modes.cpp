#include <diracab/modes.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace diracab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

using cd = std::complex<double>;

Eigen::VectorXcd angular_phase(int order, int m) {
  Eigen::VectorXcd e(m);
  for (int j = 0; j < m; ++j) {
    const double th = kTwoPi * j / m;
    e[j] = std::polar(1.0, order * th);
  }
  return e;
}

}  // namespace

SpinorField SpinorField::zero(const RadialGrid& g, int theta_count) {
  SpinorField f;
  f.radial = g;
  f.theta_count = theta_count;
  f.c1 = Eigen::MatrixXcd::Zero(g.count(), theta_count);
  f.c2 = Eigen::MatrixXcd::Zero(g.count(), theta_count);
  return f;
}

double SpinorField::norm_sq() const {
  const double dtheta = kTwoPi / theta_count;
  const Eigen::ArrayXd row = (c1.array().abs2() + c2.array().abs2())
                                 .rowwise()
                                 .sum() *
                             dtheta;
  return (row * radial.w).sum();
}

double ModeSet::norm_sq() const {
  double s = 0.0;
  for (const auto& [k, m] : modes)
    s += l2_norm_sq(radial, m.phi) + l2_norm_sq(radial, m.psi);
  return kTwoPi * s;
}

ModeSet decompose(const SpinorField& field, int k_max, double alpha) {
  if (k_max < 0) throw std::domain_error("decompose: k_max must be >= 0");
  const int m = field.theta_count;
  if (m < std::max(4, 4 * k_max))
    throw resolution_error(
        "decompose: theta grid under-resolves the requested k_max");

  ModeSet out;
  out.radial = field.radial;
  out.alpha = alpha;
  for (int k = -k_max; k <= k_max; ++k) {
    ModeSpinor mode;
    mode.k = k;
    mode.alpha = alpha;
    mode.phi = field.c1 * angular_phase(-k, m) / double(m);
    mode.psi = field.c2 * angular_phase(-(k + 1), m) / double(m);
    out.modes.emplace(k, std::move(mode));
  }
  out.truncation_tail_sq =
      std::max(0.0, field.norm_sq() - out.norm_sq());
  return out;
}

SpinorField reconstruct(const ModeSet& modes, int theta_count) {
  SpinorField f = SpinorField::zero(modes.radial, theta_count);
  for (const auto& [k, m] : modes.modes) {
    f.c1.noalias() += m.phi * angular_phase(k, theta_count).transpose();
    f.c2.noalias() += m.psi * angular_phase(k + 1, theta_count).transpose();
  }
  return f;
}

ModeSet project(const ModeSet& modes, Projection which) {
  ModeSet out;
  out.radial = modes.radial;
  out.alpha = modes.alpha;
  out.truncation_tail_sq = 0.0;
  for (const auto& [k, m] : modes.modes) {
    const bool keep = (which == Projection::P0 && k == 0) ||
                      (which == Projection::Pperp && k != 0) ||
                      (which == Projection::Pgt && k > 0) ||
                      (which == Projection::Plt && k < 0);
    if (keep) out.modes.emplace(k, m);
  }
  return out;
}

namespace {

struct RawRow {
  double r, theta;
  cd c1, c2;
};

SpinorField assemble(const std::vector<RawRow>& rows) {
  if (rows.empty()) throw std::runtime_error("spinor import: no data rows");

  std::vector<double> rv, tv;
  for (const auto& q : rows) {
    rv.push_back(q.r);
    tv.push_back(q.theta);
  }
  std::sort(rv.begin(), rv.end());
  rv.erase(std::unique(rv.begin(), rv.end()), rv.end());
  std::sort(tv.begin(), tv.end());
  tv.erase(std::unique(tv.begin(), tv.end()), tv.end());

  const int n = static_cast<int>(rv.size());
  const int m = static_cast<int>(tv.size());
  if (static_cast<int>(rows.size()) != n * m)
    throw std::runtime_error(
        "spinor import: rows do not form a complete r x theta grid");
  for (int j = 0; j < m; ++j)
    if (std::abs(tv[j] - kTwoPi * j / m) > 1e-9 * kTwoPi)
      throw std::runtime_error(
          "spinor import: theta nodes must be uniform on [0, 2pi)");

  Eigen::ArrayXd rn(n);
  for (int i = 0; i < n; ++i) rn[i] = rv[i];
  SpinorField f = SpinorField::zero(RadialGrid::from_nodes(rn), m);

  std::vector<char> seen(static_cast<std::size_t>(n) * m, 0);
  for (const auto& q : rows) {
    const int i = static_cast<int>(
        std::lower_bound(rv.begin(), rv.end(), q.r) - rv.begin());
    const int j = static_cast<int>(
        std::lower_bound(tv.begin(), tv.end(), q.theta) - tv.begin());
    char& mark = seen[static_cast<std::size_t>(i) * m + j];
    if (mark)
      throw std::runtime_error("spinor import: duplicate (r, theta) row");
    mark = 1;
    f.c1(i, j) = q.c1;
    f.c2(i, j) = q.c2;
  }
  return f;
}

}  // namespace

SpinorField import_spinor_csv(std::istream& in) {
  std::vector<RawRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    RawRow q;
    double re1, im1, re2, im2;
    if (!(ls >> q.r >> q.theta >> re1 >> im1 >> re2 >> im2))
      throw std::runtime_error("spinor import: malformed CSV row: " + line);
    q.c1 = cd(re1, im1);
    q.c2 = cd(re2, im2);
    rows.push_back(q);
  }
  return assemble(rows);
}

SpinorField import_spinor_json(std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(in);
  if (doc.is_object()) doc = doc.at("rows");
  if (!doc.is_array())
    throw std::runtime_error("spinor import: expected an array of rows");
  std::vector<RawRow> rows;
  for (const auto& row : doc) {
    if (!row.is_array() || row.size() != 6)
      throw std::runtime_error("spinor import: each row needs 6 numbers");
    RawRow q;
    q.r = row[0].get<double>();
    q.theta = row[1].get<double>();
    q.c1 = cd(row[2].get<double>(), row[3].get<double>());
    q.c2 = cd(row[4].get<double>(), row[5].get<double>());
    rows.push_back(q);
  }
  return assemble(rows);
}

}  // namespace diracab
