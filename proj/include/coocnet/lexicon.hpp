#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coocnet/types.hpp"

namespace coocnet {

/// Recognizable entity surface forms of one kind. Entries are NFC-normalized,
/// unique, sorted by code point, and tokens inside an entry are separated by
/// a single space. Immutable after construction.
class EntityLexicon {
 public:
  EntityLexicon() = default;
  /// `surfaces` must already be normalized; duplicates are collapsed.
  EntityLexicon(EntityKind kind, std::vector<std::string> surfaces);

  EntityKind kind() const { return kind_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const std::string> entries() const { return entries_; }
  const std::string& surface(EntityId id) const { return entries_[id]; }

  std::optional<EntityId> find(std::string_view surface) const;
  bool contains(std::string_view surface) const { return find(surface).has_value(); }

  /// Longest surface (in tokens) that starts with `first_token`, 0 if none.
  std::size_t max_span_from(std::string_view first_token) const;

  bool operator==(const EntityLexicon& other) const {
    return kind_ == other.kind_ && entries_ == other.entries_;
  }

 private:
  EntityKind kind_ = EntityKind::GivenName;
  std::vector<std::string> entries_;
  std::unordered_map<std::string, EntityId> index_;
  std::unordered_map<std::string, std::size_t> span_by_first_token_;
};

struct LexiconLoadReport {
  std::size_t lines = 0;
  std::size_t comments = 0;
  std::size_t blank = 0;
  std::size_t duplicates = 0;  // repeated rows collapsed into one entry
  std::size_t ambiguous = 0;   // rows dropped because their surface repeats (cities)
};

/// Normalizes one lexicon line: NFC, trailing whitespace stripped, first TAB
/// field only, internal whitespace runs collapsed to one space.
std::string normalize_surface(std::string_view line);

/// Reads a lexicon: UTF-8, one surface per line, '#' comments. Names collapse
/// duplicates; cities drop every surface that occurs more than once.
/// Throws DecodeError on invalid UTF-8 and DataError if nothing remains.
EntityLexicon parse_lexicon(std::istream& in, EntityKind kind, std::string_view source_name,
                            LexiconLoadReport* report = nullptr);
EntityLexicon load_lexicon(const std::filesystem::path& path, EntityKind kind,
                           LexiconLoadReport* report = nullptr);

/// One entry per line, sorted. parse_lexicon of this output yields an equal lexicon.
void write_lexicon(std::ostream& out, const EntityLexicon& lexicon);

EntityLexicon drop_ambiguous(const EntityLexicon& lexicon,
                             const std::unordered_set<std::string>& collisions);

}  // namespace coocnet
