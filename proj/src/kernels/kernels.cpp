#include "spcd/kernels.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace spcd::kernels {

const Backend* avx2_backend_impl();  // defined in kernels_avx2.cpp

const Backend* avx2() {
#if defined(__x86_64__) || defined(__i386__)
  if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) {
    return nullptr;
  }
  return avx2_backend_impl();
#else
  return nullptr;
#endif
}

namespace {

const Backend* widest() {
  const Backend* v = avx2();
  return v ? v : &scalar();
}

const Backend* from_name(std::string_view name) {
  if (name == "auto") return widest();
  if (name == "scalar") return &scalar();
  if (name == "avx2") {
    if (const Backend* v = avx2()) return v;
    throw std::invalid_argument("kernels: avx2 backend unavailable");
  }
  throw std::invalid_argument("kernels: unknown backend '" +
                              std::string(name) + "'");
}

const Backend* initial() {
  if (const char* env = std::getenv("SPCD_KERNELS")) {
    try {
      return from_name(env);
    } catch (const std::invalid_argument& e) {
      std::fprintf(stderr, "spcd: ignoring SPCD_KERNELS: %s\n", e.what());
    }
  }
  return widest();
}

std::atomic<const Backend*>& slot() {
  static std::atomic<const Backend*> s{initial()};
  return s;
}

}  // namespace

const Backend& active() { return *slot().load(std::memory_order_acquire); }

void select(std::string_view name) {
  slot().store(from_name(name), std::memory_order_release);
}

}  // namespace spcd::kernels
