#include "nobleent/statistics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nobleent {

namespace {

// Neumaier summation.
class CompensatedSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

Moments compute_moments(std::span<const double> values) {
  Moments m;
  m.n = values.size();
  if (m.n == 0) return m;

  CompensatedSum total;
  for (double v : values) total.add(v);
  m.mean = total.value() / static_cast<double>(m.n);
  if (m.n < 2) return m;

  CompensatedSum s2;
  CompensatedSum s4;
  for (double v : values) {
    const double d = v - m.mean;
    const double d2 = d * d;
    s2.add(d2);
    s4.add(d2 * d2);
  }
  const double n = static_cast<double>(m.n);
  m.variance = s2.value() / (n - 1.0);
  const double biased = s2.value() / n;
  const double m4 = s4.value() / n;
  m.stderr_variance = std::sqrt(std::max(m4 - biased * biased, 0.0) / n);
  return m;
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace nobleent

namespace nobleent {

LineFit fit_line(std::span<const double> x, std::span<const double> y,
                 std::span<const double> weights) {
  const std::size_t n = x.size();
  double sw = 0, sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    sw += w;
    sx += w * x[i];
    sy += w * y[i];
  }
  const double mx = sx / sw;
  const double my = sy / sw;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = weights.empty() ? 1.0 : weights[i];
    sxx += w * (x[i] - mx) * (x[i] - mx);
    sxy += w * (x[i] - mx) * (y[i] - my);
  }
  LineFit fit{};
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // With weights = 1 / sigma^2 the slope variance is 1 / sxx.
  fit.slope_stderr = std::sqrt(1.0 / sxx);
  return fit;
}

}  // namespace nobleent
