#include "usn/core/token.hpp"

#include <cstdio>

namespace usn {
namespace {

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

TokenGenerator::TokenGenerator(std::optional<std::uint64_t> seed) : engine_(seed.value_or(entropy_seed())) {}

std::string TokenGenerator::next() {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;
  {
    std::lock_guard lock(mutex_);
    hi = engine_();
    lo = engine_();
  }
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                static_cast<unsigned long long>(lo));
  return buf;
}

}  // namespace usn
