#include "coocnet/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "coocnet/text.hpp"

namespace coocnet {

std::string_view kind_tag(EntityKind kind) {
  return kind == EntityKind::CityName ? "cities" : "names";
}

EntityKind parse_kind(std::string_view tag) {
  if (tag == "names") return EntityKind::GivenName;
  if (tag == "cities") return EntityKind::CityName;
  throw DataError("unknown entity kind '" + std::string(tag) + "' (expected names|cities)");
}

EntityLexicon::EntityLexicon(EntityKind kind, std::vector<std::string> surfaces)
    : kind_(kind), entries_(std::move(surfaces)) {
  std::sort(entries_.begin(), entries_.end());
  entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
  index_.reserve(entries_.size());
  for (EntityId id = 0; id < entries_.size(); ++id) {
    const std::string& surface = entries_[id];
    index_.emplace(surface, id);
    std::size_t tokens = 1 + static_cast<std::size_t>(std::count(surface.begin(), surface.end(), ' '));
    std::string first = surface.substr(0, surface.find(' '));
    auto& span = span_by_first_token_[first];
    span = std::max(span, tokens);
  }
}

std::optional<EntityId> EntityLexicon::find(std::string_view surface) const {
  auto it = index_.find(std::string(surface));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t EntityLexicon::max_span_from(std::string_view first_token) const {
  auto it = span_by_first_token_.find(std::string(first_token));
  return it == span_by_first_token_.end() ? 0 : it->second;
}

std::string normalize_surface(std::string_view line) {
  if (auto tab = line.find('\t'); tab != std::string_view::npos) line = line.substr(0, tab);
  std::string nfc = text::to_nfc(text::trim_right(line));
  std::string out;
  out.reserve(nfc.size());
  bool space = false;
  for (char c : nfc) {
    if (c == ' ' || c == '\r' || c == '\f' || c == '\v') {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

EntityLexicon parse_lexicon(std::istream& in, EntityKind kind, std::string_view source_name,
                            LexiconLoadReport* report) {
  LexiconLoadReport local;
  LexiconLoadReport& r = report ? *report : local;
  r = {};
  std::map<std::string, std::size_t> occurrences;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    ++r.lines;
    if (!text::is_valid_utf8(line))
      throw DecodeError(std::string(source_name) + ":" + std::to_string(line_no) + ": invalid UTF-8");
    if (!line.empty() && line.front() == '#') {
      ++r.comments;
      continue;
    }
    std::string surface = normalize_surface(line);
    if (surface.empty()) {
      ++r.blank;
      continue;
    }
    ++occurrences[std::move(surface)];
  }
  std::vector<std::string> kept;
  kept.reserve(occurrences.size());
  for (auto& [surface, count] : occurrences) {
    if (count > 1 && kind == EntityKind::CityName) {
      r.ambiguous += count;
      continue;
    }
    r.duplicates += count - 1;
    kept.push_back(surface);
  }
  if (kept.empty()) throw DataError(std::string(source_name) + ": lexicon is empty after filtering");
  return EntityLexicon(kind, std::move(kept));
}

EntityLexicon load_lexicon(const std::filesystem::path& path, EntityKind kind, LexiconLoadReport* report) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(path.string() + ": cannot open lexicon");
  return parse_lexicon(in, kind, path.string(), report);
}

void write_lexicon(std::ostream& out, const EntityLexicon& lexicon) {
  for (const auto& surface : lexicon.entries()) out << surface << '\n';
}

EntityLexicon drop_ambiguous(const EntityLexicon& lexicon,
                             const std::unordered_set<std::string>& collisions) {
  std::vector<std::string> kept;
  kept.reserve(lexicon.size());
  for (const auto& surface : lexicon.entries())
    if (!collisions.contains(surface)) kept.push_back(surface);
  return EntityLexicon(lexicon.kind(), std::move(kept));
}

}  // namespace coocnet
