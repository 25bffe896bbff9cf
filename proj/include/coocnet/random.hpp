#pragma once

#include <cstdint>
#include <random>

namespace coocnet {

/// Seed for every stochastic procedure. Equal seeds and inputs give equal outputs.
struct RngSeed {
  std::uint64_t value = 0;
};

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent sub-seed for replica or work item `stream`.
constexpr RngSeed derive_seed(RngSeed base, std::uint64_t stream) {
  return RngSeed{splitmix64(splitmix64(base.value) ^ splitmix64(stream + 0x632be59bd9b4e019ULL))};
}

inline Engine make_engine(RngSeed seed) { return Engine{seed.value}; }

}  // namespace coocnet
