// This file is part of scatterlab.
//
// Licensed under the Apache License, Version 2.0. You may obtain a copy of
// the license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace scatterlab::detail {

// Fixed chunk width for Monte Carlo fan-out.  Chunk boundaries depend only on
// the sample range, never on the thread count, so per-chunk partial results
// merged in chunk order give identical output for any --threads value.
inline constexpr long kSampleChunk = 512;

struct SampleChunk {
  long begin = 0;
  long end = 0;
  std::size_t index = 0;  // position in the fixed chunk sequence
};

inline std::vector<SampleChunk> make_chunks(long begin, long end, long width = kSampleChunk) {
  std::vector<SampleChunk> chunks;
  for (long lo = begin; lo < end; lo += width)
    chunks.push_back({lo, std::min(lo + width, end), chunks.size()});
  return chunks;
}

// Runs `work` on every chunk of [begin, end); chunks are claimed by atomic
// counter when more than one thread is requested.
inline void for_each_chunk(long begin, long end, int threads,
                           const std::function<void(const SampleChunk&)>& work,
                           long width = kSampleChunk) {
  const auto chunks = make_chunks(begin, end, width);
  if (chunks.empty()) return;
  if (threads <= 1 || chunks.size() == 1) {
    for (const auto& c : chunks) work(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < chunks.size(); i = next.fetch_add(1))
      work(chunks[i]);
  };
  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), chunks.size());
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (std::size_t t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace scatterlab::detail
