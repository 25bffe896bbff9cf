#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coocnet {

using VertexId = std::uint32_t;
using EntityId = std::uint32_t;
using EdgeWeight = std::uint64_t;

enum class EntityKind { GivenName, CityName };

/// File tag used in graph headers: `names` or `cities`.
std::string_view kind_tag(EntityKind kind);
EntityKind parse_kind(std::string_view tag);

/// Malformed or inconsistent input. Messages name the file and line when known.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input bytes are not valid UTF-8.
class DecodeError : public DataError {
 public:
  using DataError::DataError;
};

/// A vertex or entity name that is not part of the graph or reference.
class UnknownEntityError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace coocnet
