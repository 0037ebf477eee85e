#pragma once

// Shared numerical kernels: real log-gamma, compensated summation,
// a counter-based splittable random stream, least-squares slope fits and a
// small deterministic work splitter.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>

namespace drs {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLog2 = 0.69314718055994530942;
inline constexpr double kEulerGamma = 0.5772156649015329;

/// ln Γ(x) for real x > 0. Lanczos approximation (g = 7, 9 terms) with the
/// reflection formula below x = 1/2.
double log_gamma(double x);

/// Neumaier-compensated accumulator. Order-dependent but deterministic.
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(double init) : sum_(init) {}

  CompensatedSum& operator+=(double x) noexcept;
  CompensatedSum& operator-=(double x) noexcept { return *this += -x; }

  double value() const noexcept { return sum_ + comp_; }
  explicit operator double() const noexcept { return value(); }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Compensated sum of a finite sequence; throws on non-finite input.
double compensated_sum(std::span<const double> terms);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
  std::size_t n_points = 0;
};

/// Ordinary least-squares line through (x, y) points.
SlopeFit fit_slope(std::span<const std::pair<double, double>> points);

/// Counter-based generator (Philox4x32-10). A stream is identified by
/// (seed, stream_id); the sequence it produces depends on nothing else.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0, 1]; safe as an argument to log.
  double uniform_pos() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  /// Independent stream derived from this one's identity (not its state).
  RngStream substream(std::uint64_t index) const noexcept;

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
};

/// Worker count: explicit request if > 0, else DRS_THREADS, else hardware.
int resolve_threads(int requested) noexcept;

/// Runs task(i) for i in [0, n_tasks) on up to `threads` workers. Tasks must
/// write to disjoint outputs; the first exception thrown is rethrown.
void parallel_for(std::size_t n_tasks, int threads,
                  const std::function<void(std::size_t)>& task);

}  // namespace drs
