#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coocnet/lexicon.hpp"

namespace coocnet {

enum class SplitMode { Sentence, Line };

SplitMode parse_split_mode(std::string_view name);

/// One atomic context (sentence or line) with its tokens.
struct ContextRecord {
  std::uint64_t context_id = 0;
  std::vector<std::string> tokens;
};

using ContextSink = std::function<void(const ContextRecord&)>;

/// Incremental context splitter. Feed lines (without terminator) in order and
/// call finish() at end of input.
///
/// Sentence mode ends a context at '.', '!' or '?' when followed by whitespace
/// and then an uppercase letter, or by the end of input. Line breaks count as
/// whitespace. Line mode emits one context per line. Contexts without tokens
/// are skipped; emitted ids are strictly increasing.
class ContextSplitter {
 public:
  ContextSplitter(SplitMode mode, ContextSink sink, std::uint64_t first_id = 0);

  /// Throws DecodeError if `line` is not valid UTF-8.
  void feed_line(std::string_view line);
  void finish();

  std::uint64_t next_id() const { return next_id_; }

 private:
  void emit(std::string_view text);
  void feed_sentence_text(std::string_view nfc);

  SplitMode mode_;
  ContextSink sink_;
  std::uint64_t next_id_;
  std::string pending_;         // sentence text not yet emitted
  std::size_t cut_ = 0;         // candidate boundary inside pending_
  bool after_terminator_ = false;
  bool awaiting_start_ = false;  // saw terminator + whitespace, waiting for next letter
  ContextRecord scratch_;
};

void split_contexts(std::istream& in, SplitMode mode, const ContextSink& sink,
                    std::string_view source_name = "<input>");
std::vector<ContextRecord> split_contexts(std::string_view text, SplitMode mode);

/// Distinct lexicon entities in the tokens, sorted by id. Multi-token surfaces
/// are matched greedily left to right, longest first, without overlap;
/// matching is case-sensitive.
std::vector<EntityId> match_entities(std::span<const std::string> tokens,
                                     const EntityLexicon& lexicon);

/// Context-level co-occurrence counts over one lexicon. A pair is counted once
/// per context however often its members are mentioned; frequency counts the
/// contexts containing an entity.
class CoocCounts {
 public:
  CoocCounts() = default;
  explicit CoocCounts(std::size_t entity_count) : frequency_(entity_count, 0) {}

  /// `entities` sorted and distinct.
  void add_context(std::span<const EntityId> entities);
  /// Exact integer sum; associative and commutative.
  void merge(const CoocCounts& other);

  std::size_t entity_count() const { return frequency_.size(); }
  std::uint64_t contexts() const { return contexts_; }
  std::uint64_t frequency(EntityId id) const { return frequency_[id]; }
  std::span<const std::uint64_t> frequencies() const { return frequency_; }
  std::uint64_t pair_count(EntityId a, EntityId b) const;
  std::size_t distinct_pairs() const { return pairs_.size(); }

  struct Pair {
    EntityId first;
    EntityId second;
    std::uint64_t count;
    bool operator==(const Pair&) const = default;
  };
  /// All pairs with first < second, sorted.
  std::vector<Pair> sorted_pairs() const;

  bool operator==(const CoocCounts& other) const;

  static std::uint64_t pair_key(EntityId a, EntityId b) {
    if (b < a) std::swap(a, b);
    return (std::uint64_t{a} << 32) | b;
  }

 private:
  std::vector<std::uint64_t> frequency_;
  std::unordered_map<std::uint64_t, std::uint64_t> pairs_;
  std::uint64_t contexts_ = 0;
};

struct CountOptions {
  SplitMode mode = SplitMode::Sentence;
  /// Contexts with more matched entities than this are skipped entirely.
  std::optional<std::size_t> max_mentions;
};

CoocCounts count_cooccurrences(std::span<const ContextRecord> contexts,
                               const EntityLexicon& lexicon,
                               std::optional<std::size_t> max_mentions = std::nullopt);
CoocCounts count_cooccurrences(std::istream& in, const EntityLexicon& lexicon,
                               const CountOptions& options,
                               std::string_view source_name = "<input>");

/// TSV `entity<TAB>frequency` for every entity seen at least once, sorted.
void write_frequencies(std::ostream& out, const CoocCounts& counts, const EntityLexicon& lexicon);

/// Expands directories recursively into their regular files, sorted.
std::vector<std::filesystem::path> expand_inputs(std::span<const std::filesystem::path> inputs);

/// Counts over files in parallel. Every file is its own document; in Line mode
/// large files are also split into line blocks. Results do not depend on
/// `threads`.
CoocCounts count_corpus(std::span<const std::filesystem::path> files, const EntityLexicon& lexicon,
                        const CountOptions& options, unsigned threads = 1);

}  // namespace coocnet
