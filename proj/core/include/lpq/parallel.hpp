#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

// Deterministic parallel helpers. Work is split into index ranges whose
// boundaries depend only on the problem size, never on the worker count, and
// partial results are merged in index order. Output is therefore bit-identical
// for any number of workers.
namespace lpq::parallel {

void set_worker_count(unsigned workers);  // 0 selects hardware concurrency
unsigned worker_count();

// Runs task(i) for every i in [0, count); tasks may run concurrently.
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& task);

template <class T, class F>
std::vector<T> map(std::size_t count, F&& fn) {
  std::vector<T> out(count);
  for_each_index(count, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

// Sums term(i) over [0, count) in fixed chunks of `chunk` indices. Each chunk is
// accumulated sequentially; chunk partials are added left to right.
template <class F>
double chunked_sum(std::size_t count, std::size_t chunk, F&& term) {
  if (count == 0) return 0.0;
  if (chunk == 0) chunk = 1;
  const std::size_t chunks = (count + chunk - 1) / chunk;
  std::vector<double> partial(chunks, 0.0);
  for_each_index(chunks, [&](std::size_t c) {
    const std::size_t lo = c * chunk;
    const std::size_t hi = lo + chunk < count ? lo + chunk : count;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[c] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace lpq::parallel
