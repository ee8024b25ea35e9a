// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The jiaf Authors

#include "alloc_tracker.hpp"

#include <atomic>
#include <cstdlib>
#include <new>

namespace {

std::atomic<std::size_t> live{0};
std::atomic<std::size_t> peak{0};

// Keeps the block size in front of the block so unsized delete can account for it.
constexpr std::size_t kHeader = alignof(std::max_align_t);

void* tracked_alloc(std::size_t size) noexcept {
  auto* raw = static_cast<unsigned char*>(std::malloc(size + kHeader));
  if (raw == nullptr) {
    return nullptr;
  }
  *reinterpret_cast<std::size_t*>(raw) = size;
  const std::size_t now = live.fetch_add(size, std::memory_order_relaxed) + size;
  std::size_t seen = peak.load(std::memory_order_relaxed);
  while (now > seen &&
         !peak.compare_exchange_weak(seen, now, std::memory_order_relaxed)) {
  }
  return raw + kHeader;
}

void tracked_free(void* p) noexcept {
  if (p == nullptr) {
    return;
  }
  auto* raw = static_cast<unsigned char*>(p) - kHeader;
  live.fetch_sub(*reinterpret_cast<std::size_t*>(raw), std::memory_order_relaxed);
  std::free(raw);
}

void* checked_alloc(std::size_t size) {
  void* p = tracked_alloc(size == 0 ? 1 : size);
  if (p == nullptr) {
    throw std::bad_alloc();
  }
  return p;
}

}  // namespace

namespace jiaf_cli {

std::size_t live_bytes() noexcept { return live.load(std::memory_order_relaxed); }
std::size_t peak_bytes() noexcept { return peak.load(std::memory_order_relaxed); }
void reset_peak() noexcept { peak.store(live.load(std::memory_order_relaxed)); }

}  // namespace jiaf_cli

void* operator new(std::size_t size) { return checked_alloc(size); }
void* operator new[](std::size_t size) { return checked_alloc(size); }
void* operator new(std::size_t size, const std::nothrow_t&) noexcept {
  return tracked_alloc(size == 0 ? 1 : size);
}
void* operator new[](std::size_t size, const std::nothrow_t&) noexcept {
  return tracked_alloc(size == 0 ? 1 : size);
}
void operator delete(void* p) noexcept { tracked_free(p); }
void operator delete[](void* p) noexcept { tracked_free(p); }
void operator delete(void* p, std::size_t) noexcept { tracked_free(p); }
void operator delete[](void* p, std::size_t) noexcept { tracked_free(p); }
void operator delete(void* p, const std::nothrow_t&) noexcept { tracked_free(p); }
void operator delete[](void* p, const std::nothrow_t&) noexcept { tracked_free(p); }
