#pragma once

#include <Eigen/SparseCore>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coocnet/types.hpp"

namespace coocnet {

/// Binary entity x category incidence. Only entities with at least one
/// category exist. Entities and categories are sorted by code point.
class CategoryMatrix {
 public:
  using Incidence = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  CategoryMatrix() = default;
  /// (entity, category) assignments; repeats collapse.
  static CategoryMatrix from_assignments(std::vector<std::pair<std::string, std::string>> assignments);

  std::size_t entity_count() const { return entities_.size(); }
  std::size_t category_count() const { return categories_.size(); }
  std::size_t nonzeros() const { return static_cast<std::size_t>(incidence_.nonZeros()); }

  std::span<const std::string> entities() const { return entities_; }
  std::span<const std::string> categories() const { return categories_; }
  std::optional<std::size_t> find(std::string_view entity) const;
  /// Throws UnknownEntityError.
  std::size_t require(std::string_view entity) const;

  const Incidence& incidence() const { return incidence_; }
  /// Category column -> entities, for inverted lookups.
  const Eigen::SparseMatrix<double>& by_category() const { return by_category_; }
  std::size_t category_count_of(std::size_t entity) const {
    return static_cast<std::size_t>(incidence_.outerIndexPtr()[entity + 1] - incidence_.outerIndexPtr()[entity]);
  }

 private:
  std::vector<std::string> entities_;
  std::vector<std::string> categories_;
  Incidence incidence_;
  Eigen::SparseMatrix<double> by_category_;
};

/// TSV `entity<TAB>category`, one assignment per line, '#' comments.
CategoryMatrix parse_categories(std::istream& in, std::string_view source_name = "<input>");
CategoryMatrix load_categories(const std::filesystem::path& path);

/// |C(u) ∩ C(v)| / (√|C(u)| √|C(v)|).
double category_cosine(const CategoryMatrix& m, std::size_t u, std::size_t v);
double category_cosine(const CategoryMatrix& m, std::string_view u, std::string_view v);

/// Entities v != u sharing at least one category with u.
std::size_t nonzero_partner_count(const CategoryMatrix& m, std::string_view u);
std::size_t nonzero_partner_count(const CategoryMatrix& m, std::size_t u);

struct GeoPoint {
  double lat = 0.0;  // degrees, [-90, 90]
  double lon = 0.0;  // degrees, (-180, 180]
};

inline constexpr double kEarthRadiusKm = 6371.0;

/// Great-circle distance in km (haversine, atan2 form). Exactly symmetric.
double haversine_km(GeoPoint a, GeoPoint b);

/// One location per entity.
class GeoTable {
 public:
  /// Throws DataError on a repeated entity or out-of-range coordinates.
  void add(std::string entity, GeoPoint point);
  std::optional<GeoPoint> find(std::string_view entity) const;
  std::size_t size() const { return points_.size(); }

 private:
  std::unordered_map<std::string, GeoPoint> points_;
};

/// TSV `entity<TAB>lat<TAB>lon` in decimal degrees, '#' comments.
/// A longitude of -180 is stored as 180.
GeoTable parse_geo(std::istream& in, std::string_view source_name = "<input>");
GeoTable load_geo(const std::filesystem::path& path);

/// Throws UnknownEntityError.
double geo_distance(const GeoTable& t, std::string_view u, std::string_view v);

}  // namespace coocnet
