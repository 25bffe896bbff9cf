#include "coocnet/corpus.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "coocnet/parallel.hpp"
#include "coocnet/text.hpp"

namespace coocnet {
namespace {

bool is_terminator(UChar32 c) { return c == '.' || c == '!' || c == '?'; }

bool starts_sentence(UChar32 c) { return u_isupper(c) || u_istitle(c); }

std::string located(std::string_view source, std::size_t line, std::string_view what) {
  return std::string(source) + ":" + std::to_string(line) + ": " + std::string(what);
}

// Line-mode work units. Counting is exact, so the split only affects speed.
std::size_t lines_per_block(std::size_t total_lines, unsigned threads) {
  const std::size_t parts = 8 * std::size_t{std::max(1u, threads)};
  const std::size_t target = (total_lines + parts - 1) / parts;
  return std::clamp<std::size_t>(target, 64, std::size_t{1} << 15);
}

}  // namespace

SplitMode parse_split_mode(std::string_view name) {
  if (name == "sentence") return SplitMode::Sentence;
  if (name == "line") return SplitMode::Line;
  throw DataError("unknown split mode '" + std::string(name) + "' (expected sentence|line)");
}

ContextSplitter::ContextSplitter(SplitMode mode, ContextSink sink, std::uint64_t first_id)
    : mode_(mode), sink_(std::move(sink)), next_id_(first_id) {}

void ContextSplitter::feed_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const std::string nfc = text::to_nfc(line);
  if (mode_ == SplitMode::Line) {
    emit(nfc);
    return;
  }
  feed_sentence_text(nfc);
  feed_sentence_text("\n");
}

void ContextSplitter::feed_sentence_text(std::string_view nfc) {
  const auto* s = reinterpret_cast<const uint8_t*>(nfc.data());
  const auto length = static_cast<int32_t>(nfc.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t at = i;
    UChar32 c;
    U8_NEXT(s, i, length, c);
    const std::string_view bytes = nfc.substr(at, i - at);
    const bool space = u_isUWhiteSpace(c);
    if (awaiting_start_ && !space) {
      if (starts_sentence(c)) {
        emit(std::string_view(pending_).substr(0, cut_));
        pending_.erase(0, cut_);
      }
      awaiting_start_ = false;
      cut_ = 0;
    }
    if (after_terminator_ && space) {
      cut_ = pending_.size();
      awaiting_start_ = true;
    }
    after_terminator_ = is_terminator(c);
    pending_.append(bytes);
  }
}

void ContextSplitter::finish() {
  if (!pending_.empty()) emit(pending_);
  pending_.clear();
  cut_ = 0;
  after_terminator_ = false;
  awaiting_start_ = false;
}

void ContextSplitter::emit(std::string_view text) {
  text::tokenize(text, scratch_.tokens);
  if (scratch_.tokens.empty()) return;
  scratch_.context_id = next_id_++;
  sink_(scratch_);
}

void split_contexts(std::istream& in, SplitMode mode, const ContextSink& sink, std::string_view source_name) {
  ContextSplitter splitter(mode, sink);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    try {
      splitter.feed_line(line);
    } catch (const DecodeError&) {
      throw DecodeError(located(source_name, line_no, "invalid UTF-8"));
    }
  }
  splitter.finish();
}

std::vector<ContextRecord> split_contexts(std::string_view text, SplitMode mode) {
  std::vector<ContextRecord> out;
  std::istringstream in{std::string(text)};
  split_contexts(in, mode, [&](const ContextRecord& ctx) { out.push_back(ctx); });
  return out;
}

std::vector<EntityId> match_entities(std::span<const std::string> tokens, const EntityLexicon& lexicon) {
  std::vector<EntityId> found;
  std::string candidate;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::size_t span = std::min(lexicon.max_span_from(tokens[i]), tokens.size() - i);
    std::size_t consumed = 1;
    for (std::size_t len = span; len >= 1; --len) {
      candidate = tokens[i];
      for (std::size_t k = 1; k < len; ++k) {
        candidate.push_back(' ');
        candidate += tokens[i + k];
      }
      if (auto id = lexicon.find(candidate)) {
        found.push_back(*id);
        consumed = len;
        break;
      }
    }
    i += consumed;
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

void CoocCounts::add_context(std::span<const EntityId> entities) {
  ++contexts_;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    ++frequency_[entities[i]];
    for (std::size_t j = i + 1; j < entities.size(); ++j) ++pairs_[pair_key(entities[i], entities[j])];
  }
}

void CoocCounts::merge(const CoocCounts& other) {
  if (frequency_.empty()) frequency_.assign(other.frequency_.size(), 0);
  if (other.frequency_.size() != frequency_.size())
    throw DataError("cannot merge co-occurrence counts over different lexicons");
  for (std::size_t i = 0; i < frequency_.size(); ++i) frequency_[i] += other.frequency_[i];
  for (const auto& [key, count] : other.pairs_) pairs_[key] += count;
  contexts_ += other.contexts_;
}

std::uint64_t CoocCounts::pair_count(EntityId a, EntityId b) const {
  if (a == b) return 0;
  auto it = pairs_.find(pair_key(a, b));
  return it == pairs_.end() ? 0 : it->second;
}

std::vector<CoocCounts::Pair> CoocCounts::sorted_pairs() const {
  std::vector<Pair> out;
  out.reserve(pairs_.size());
  for (const auto& [key, count] : pairs_)
    out.push_back({static_cast<EntityId>(key >> 32), static_cast<EntityId>(key & 0xffffffffu), count});
  std::sort(out.begin(), out.end(), [](const Pair& a, const Pair& b) {
    return a.first != b.first ? a.first < b.first : a.second < b.second;
  });
  return out;
}

bool CoocCounts::operator==(const CoocCounts& other) const {
  return contexts_ == other.contexts_ && frequency_ == other.frequency_ && pairs_ == other.pairs_;
}

namespace {

class Counter {
 public:
  Counter(const EntityLexicon& lexicon, std::optional<std::size_t> max_mentions)
      : lexicon_(lexicon), max_mentions_(max_mentions), counts_(lexicon.size()) {}

  void operator()(const ContextRecord& ctx) {
    const auto entities = match_entities(ctx.tokens, lexicon_);
    if (entities.empty()) return;
    if (max_mentions_ && entities.size() > *max_mentions_) return;
    counts_.add_context(entities);
  }

  CoocCounts& counts() { return counts_; }

 private:
  const EntityLexicon& lexicon_;
  std::optional<std::size_t> max_mentions_;
  CoocCounts counts_;
};

}  // namespace

CoocCounts count_cooccurrences(std::span<const ContextRecord> contexts, const EntityLexicon& lexicon,
                               std::optional<std::size_t> max_mentions) {
  Counter counter(lexicon, max_mentions);
  for (const auto& ctx : contexts) counter(ctx);
  return std::move(counter.counts());
}

CoocCounts count_cooccurrences(std::istream& in, const EntityLexicon& lexicon, const CountOptions& options,
                               std::string_view source_name) {
  Counter counter(lexicon, options.max_mentions);
  split_contexts(in, options.mode, std::ref(counter), source_name);
  return std::move(counter.counts());
}

void write_frequencies(std::ostream& out, const CoocCounts& counts, const EntityLexicon& lexicon) {
  for (EntityId id = 0; id < counts.entity_count(); ++id)
    if (counts.frequency(id) > 0) out << lexicon.surface(id) << '\t' << counts.frequency(id) << '\n';
}

std::vector<std::filesystem::path> expand_inputs(std::span<const std::filesystem::path> inputs) {
  namespace fs = std::filesystem;
  std::vector<fs::path> files;
  for (const auto& input : inputs) {
    if (fs::is_directory(input)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(input))
        if (entry.is_regular_file()) found.push_back(entry.path());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(input)) {
      files.push_back(input);
    } else {
      throw DataError(input.string() + ": no such file or directory");
    }
  }
  return files;
}

namespace {

// A unit of ingestion work: a whole file, or a block of lines of one file.
struct IngestTask {
  std::size_t file;
  std::size_t first_line = 0;  // 1-based line number of the block start, for messages
  std::string_view block;      // empty view => stream the whole file
};

}  // namespace

CoocCounts count_corpus(std::span<const std::filesystem::path> files, const EntityLexicon& lexicon,
                        const CountOptions& options, unsigned threads) {
  std::vector<std::string> contents;
  std::vector<IngestTask> tasks;
  if (options.mode == SplitMode::Line) {
    contents.resize(files.size());
    std::size_t total_lines = 0;
    for (std::size_t f = 0; f < files.size(); ++f) {
      std::ifstream in(files[f], std::ios::binary);
      if (!in) throw DataError(files[f].string() + ": cannot open corpus file");
      std::ostringstream buffer;
      buffer << in.rdbuf();
      contents[f] = std::move(buffer).str();
      total_lines += static_cast<std::size_t>(std::count(contents[f].begin(), contents[f].end(), '\n')) + 1;
    }
    const std::size_t block_lines = lines_per_block(total_lines, threads);
    for (std::size_t f = 0; f < files.size(); ++f) {
      std::string_view all = contents[f];
      std::size_t line = 1;
      while (!all.empty()) {
        std::size_t end = 0;
        std::size_t lines = 0;
        while (end < all.size() && lines < block_lines) {
          auto nl = all.find('\n', end);
          end = nl == std::string_view::npos ? all.size() : nl + 1;
          ++lines;
        }
        tasks.push_back({f, line, all.substr(0, end)});
        all.remove_prefix(end);
        line += lines;
      }
    }
  } else {
    for (std::size_t f = 0; f < files.size(); ++f) tasks.push_back({f, 1, {}});
  }

  CoocCounts total(lexicon.size());
  std::mutex total_mutex;
  parallel_for(tasks.size(), threads, [&](std::size_t t) {
    const IngestTask& task = tasks[t];
    const std::string name = files[task.file].string();
    Counter counter(lexicon, options.max_mentions);
    if (options.mode == SplitMode::Line) {
      ContextSplitter splitter(SplitMode::Line, std::ref(counter));
      std::string_view rest = task.block;
      std::size_t line_no = task.first_line;
      while (!rest.empty()) {
        auto nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        try {
          splitter.feed_line(line);
        } catch (const DecodeError&) {
          throw DecodeError(located(name, line_no, "invalid UTF-8"));
        }
        rest.remove_prefix(nl == std::string_view::npos ? rest.size() : nl + 1);
        ++line_no;
      }
      splitter.finish();
    } else {
      std::ifstream in(files[task.file], std::ios::binary);
      if (!in) throw DataError(name + ": cannot open corpus file");
      split_contexts(in, SplitMode::Sentence, std::ref(counter), name);
    }
    std::lock_guard lock(total_mutex);
    total.merge(counter.counts());
  });
  return total;
}

}  // namespace coocnet
