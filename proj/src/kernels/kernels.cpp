#include "exovdc/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace exovdc::kern {

#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();  // defined in avx2.cpp
#endif

namespace {

bool avx2_supported() {
#if defined(__x86_64__) && defined(__GNUC__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend pick_default() {
  if (const char* env = std::getenv("EXOVDC_KERNELS")) {
    if (std::strcmp(env, "scalar") == 0) return Backend::scalar;
    if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Backend::avx2;
  }
  return avx2_supported() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend> g_backend{pick_default()};

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "?";
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::scalar};
  if (avx2_supported()) out.push_back(Backend::avx2);
  return out;
}

Backend active_backend() { return g_backend.load(std::memory_order_relaxed); }

bool set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_supported()) return false;
  g_backend.store(b, std::memory_order_relaxed);
  return true;
}

const Ops& ops() {
#if defined(__x86_64__) || defined(_M_X64)
  if (active_backend() == Backend::avx2) return avx2_ops();
#endif
  return scalar_ops();
}

}  // namespace exovdc::kern
