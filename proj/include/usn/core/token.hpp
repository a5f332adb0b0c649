#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <string>

namespace usn {

/// Produces 128-bit values rendered as 32 lowercase hex characters.
/// Seeded from std::random_device unless a seed is supplied.
class TokenGenerator {
 public:
  explicit TokenGenerator(std::optional<std::uint64_t> seed = std::nullopt);

  std::string next();

 private:
  std::mutex mutex_;
  std::mt19937_64 engine_;
};

}  // namespace usn
