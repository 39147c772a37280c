#include "prolab/difference.hpp"

#include <algorithm>

#include "prolab/parallel.hpp"

namespace prolab {

double stress(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw Error(ErrorCode::InvalidArgument, "stress needs two non-empty vectors of equal length");
  }
  double aa = 0.0, bb = 0.0, ab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    aa += a[i] * a[i];
    bb += b[i] * b[i];
    ab += a[i] * b[i];
  }
  if (!(aa > 0.0) || !(bb > 0.0)) {
    throw Error(ErrorCode::ZeroVector, "stress of a zero vector");
  }
  const double k = ab / aa;
  double residual = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double r = k * a[i] - b[i];
    residual += r * r;
  }
  return std::min(1.0, std::sqrt(residual / bb));
}

PairCache make_pair_cache(std::span<const LabPair> pairs, const ColorSpaces& spaces) {
  if (pairs.empty()) throw Error(ErrorCode::InvalidArgument, "empty pair sample");
  PairCache cache;
  const std::size_t n = pairs.size();
  cache.xyz_a.resize(n);
  cache.xyz_b.resize(n);
  cache.de00.resize(n);
  parallel_chunks(chunk_count(n), [&](std::size_t chunk) {
    const std::size_t end = std::min(n, (chunk + 1) * kChunkSize);
    for (std::size_t i = chunk * kChunkSize; i < end; ++i) {
      cache.xyz_a[i] = spaces.to_xyz(ColorSpaceId::CIELAB, pairs[i].a);
      cache.xyz_b[i] = spaces.to_xyz(ColorSpaceId::CIELAB, pairs[i].b);
      cache.de00[i] = ciede2000(pairs[i].a, pairs[i].b);
    }
  });
  return cache;
}

DifferenceScatter difference_scatter(const SpaceMap& target, const PairCache& cache) {
  const std::size_t n = cache.size();
  DifferenceScatter out;
  out.de_space.resize(n);
  out.de00 = cache.de00;
  parallel_chunks(chunk_count(n), [&](std::size_t chunk) {
    const std::size_t end = std::min(n, (chunk + 1) * kChunkSize);
    for (std::size_t i = chunk * kChunkSize; i < end; ++i) {
      try {
        out.de_space[i] = euclidean_de(target(cache.xyz_a[i]), target(cache.xyz_b[i]));
      } catch (const Error& e) {
        throw Error(ErrorCode::ConversionError,
                    "pair " + std::to_string(i) + " left the target domain (" + e.what() + ")");
      }
    }
  });
  return out;
}

double uniformity(const SpaceMap& target, const PairCache& cache) {
  const DifferenceScatter s = difference_scatter(target, cache);
  return stress(s.de_space, s.de00);
}

double uniformity(ColorSpaceId target, const PairCache& cache, const ColorSpaces& spaces) {
  return uniformity(spaces.forward_map(target), cache);
}

double uniformity(ColorSpaceId target, std::span<const LabPair> pairs, const ColorSpaces& spaces) {
  return uniformity(target, make_pair_cache(pairs, spaces));
}

}  // namespace prolab
