#include "coocnet/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace coocnet {

unsigned resolve_thread_count(std::optional<unsigned> requested) {
  if (requested) return std::max(1u, *requested);
  if (const char* env = std::getenv("COOCNET_THREADS")) {
    std::string_view text{env};
    unsigned value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size() && value > 0) return value;
  }
  return 1;
}

}  // namespace coocnet
