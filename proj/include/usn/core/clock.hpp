#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>

namespace usn {

using Duration = std::chrono::nanoseconds;

inline constexpr Duration seconds(std::int64_t s) { return std::chrono::seconds(s); }

/// Monotonic time source. Services take one so tests can drive time by hand.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual Duration now() const = 0;
};

class SteadyClock final : public Clock {
 public:
  Duration now() const override { return std::chrono::steady_clock::now().time_since_epoch(); }
};

class ManualClock final : public Clock {
 public:
  explicit ManualClock(Duration start = Duration::zero()) : now_(start.count()) {}

  Duration now() const override { return Duration(now_.load(std::memory_order_acquire)); }
  void advance(Duration d) { now_.fetch_add(d.count(), std::memory_order_acq_rel); }

 private:
  std::atomic<Duration::rep> now_;
};

}  // namespace usn
