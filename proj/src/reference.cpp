#include "coocnet/reference.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <tuple>

#include "coocnet/text.hpp"

namespace coocnet {
namespace {

std::string located(std::string_view source, std::size_t line, std::string_view what) {
  return std::string(source) + ":" + std::to_string(line) + ": " + std::string(what);
}

std::vector<std::string_view> split_tabs(std::string_view row) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    auto tab = row.find('\t', start);
    fields.push_back(row.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) return fields;
    start = tab + 1;
  }
}

// Calls row(fields, line_no) for every data line.
template <typename Row>
void for_each_row(std::istream& in, std::string_view source, Row&& row) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!text::is_valid_utf8(line)) throw DecodeError(located(source, line_no, "invalid UTF-8"));
    row(split_tabs(line), line_no);
  }
}

double parse_double(std::string_view s, std::string_view source, std::size_t line_no) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value))
    throw DataError(located(source, line_no, "bad number '" + std::string(s) + "'"));
  return value;
}

std::size_t index_in(std::span<const std::string> sorted, std::string_view key) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), key,
                             [](const std::string& a, std::string_view b) { return std::string_view(a) < b; });
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

CategoryMatrix CategoryMatrix::from_assignments(std::vector<std::pair<std::string, std::string>> assignments) {
  std::sort(assignments.begin(), assignments.end());
  assignments.erase(std::unique(assignments.begin(), assignments.end()), assignments.end());
  CategoryMatrix m;
  for (const auto& [entity, category] : assignments) {
    if (m.entities_.empty() || m.entities_.back() != entity) m.entities_.push_back(entity);
    m.categories_.push_back(category);
  }
  std::sort(m.categories_.begin(), m.categories_.end());
  m.categories_.erase(std::unique(m.categories_.begin(), m.categories_.end()), m.categories_.end());

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(assignments.size());
  std::size_t row = 0;
  for (std::size_t i = 0; i < assignments.size(); ++i) {
    if (i > 0 && assignments[i].first != assignments[i - 1].first) ++row;
    triplets.emplace_back(static_cast<int>(row), static_cast<int>(index_in(m.categories_, assignments[i].second)), 1.0);
  }
  const auto rows = static_cast<Eigen::Index>(m.entities_.size());
  const auto cols = static_cast<Eigen::Index>(m.categories_.size());
  m.incidence_.resize(rows, cols);
  m.incidence_.setFromTriplets(triplets.begin(), triplets.end());
  m.incidence_.makeCompressed();
  m.by_category_ = m.incidence_;
  m.by_category_.makeCompressed();
  return m;
}

std::optional<std::size_t> CategoryMatrix::find(std::string_view entity) const {
  const std::size_t i = index_in(entities_, entity);
  if (i == entities_.size() || entities_[i] != entity) return std::nullopt;
  return i;
}

std::size_t CategoryMatrix::require(std::string_view entity) const {
  if (auto i = find(entity)) return *i;
  throw UnknownEntityError("no category assignment for '" + std::string(entity) + "'");
}

CategoryMatrix parse_categories(std::istream& in, std::string_view source_name) {
  std::vector<std::pair<std::string, std::string>> assignments;
  for_each_row(in, source_name, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f.size() != 2 || f[0].empty() || f[1].empty())
      throw DataError(located(source_name, line_no, "expected entity<TAB>category"));
    assignments.emplace_back(text::to_nfc(f[0]), text::to_nfc(f[1]));
  });
  return CategoryMatrix::from_assignments(std::move(assignments));
}

CategoryMatrix load_categories(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open category file");
  return parse_categories(in, path.string());
}

double category_cosine(const CategoryMatrix& m, std::size_t u, std::size_t v) {
  const auto& a = m.incidence();
  const double shared = a.row(static_cast<Eigen::Index>(u)).dot(a.row(static_cast<Eigen::Index>(v)));
  const double cu = static_cast<double>(m.category_count_of(u));
  const double cv = static_cast<double>(m.category_count_of(v));
  return shared / (std::sqrt(cu) * std::sqrt(cv));
}

double category_cosine(const CategoryMatrix& m, std::string_view u, std::string_view v) {
  return category_cosine(m, m.require(u), m.require(v));
}

std::size_t nonzero_partner_count(const CategoryMatrix& m, std::size_t u) {
  const auto& rows = m.incidence();
  const auto& cols = m.by_category();
  std::vector<char> seen(m.entity_count(), 0);
  std::size_t count = 0;
  for (CategoryMatrix::Incidence::InnerIterator c(rows, static_cast<Eigen::Index>(u)); c; ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator e(cols, c.col()); e; ++e) {
      const auto v = static_cast<std::size_t>(e.row());
      if (v != u && !seen[v]) {
        seen[v] = 1;
        ++count;
      }
    }
  }
  return count;
}

std::size_t nonzero_partner_count(const CategoryMatrix& m, std::string_view u) {
  return nonzero_partner_count(m, m.require(u));
}

double haversine_km(GeoPoint a, GeoPoint b) {
  // Canonical argument order makes the result bit-for-bit symmetric.
  if (std::tie(b.lat, b.lon) < std::tie(a.lat, a.lon)) std::swap(a, b);
  constexpr double rad = std::numbers::pi / 180.0;
  const double phi1 = a.lat * rad;
  const double phi2 = b.lat * rad;
  const double dphi = (b.lat - a.lat) * rad;
  const double dlambda = (b.lon - a.lon) * rad;
  const double s1 = std::sin(dphi / 2);
  const double s2 = std::sin(dlambda / 2);
  const double h = std::clamp(s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
}

void GeoTable::add(std::string entity, GeoPoint p) {
  if (!(p.lat >= -90.0 && p.lat <= 90.0)) throw DataError("latitude out of range for '" + entity + "'");
  if (!(p.lon >= -180.0 && p.lon <= 180.0)) throw DataError("longitude out of range for '" + entity + "'");
  if (p.lon == -180.0) p.lon = 180.0;
  auto [it, inserted] = points_.emplace(std::move(entity), p);
  if (!inserted) throw DataError("repeated location for '" + it->first + "'");
}

std::optional<GeoPoint> GeoTable::find(std::string_view entity) const {
  auto it = points_.find(std::string(entity));
  if (it == points_.end()) return std::nullopt;
  return it->second;
}

GeoTable parse_geo(std::istream& in, std::string_view source_name) {
  GeoTable table;
  for_each_row(in, source_name, [&](const std::vector<std::string_view>& f, std::size_t line_no) {
    if (f.size() != 3 || f[0].empty()) throw DataError(located(source_name, line_no, "expected entity<TAB>lat<TAB>lon"));
    const GeoPoint p{parse_double(f[1], source_name, line_no), parse_double(f[2], source_name, line_no)};
    try {
      table.add(text::to_nfc(f[0]), p);
    } catch (const DataError& e) {
      throw DataError(located(source_name, line_no, e.what()));
    }
  });
  return table;
}

GeoTable load_geo(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open geo file");
  return parse_geo(in, path.string());
}

double geo_distance(const GeoTable& t, std::string_view u, std::string_view v) {
  auto a = t.find(u);
  if (!a) throw UnknownEntityError("no location for '" + std::string(u) + "'");
  auto b = t.find(v);
  if (!b) throw UnknownEntityError("no location for '" + std::string(v) + "'");
  return haversine_km(*a, *b);
}

}  // namespace coocnet
