#include "trish/core.hpp"

namespace trish {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, StreamPurpose purpose) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(purpose), 0x7251u};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, StreamPurpose purpose)
    : seed_(seed), purpose_(purpose), engine_(make_engine(seed, purpose)) {}

Vector RngStream::normal_vector(std::size_t n) {
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal();
  return v;
}

}  // namespace trish
