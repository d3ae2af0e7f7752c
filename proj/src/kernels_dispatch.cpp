#include "nmr/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace nmr::kernels {
namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const Table* select() {
  const Table* simd = avx2();
  const char* forced = std::getenv("NMR_KERNELS");
  if (forced != nullptr) {
    if (std::strcmp(forced, "scalar") == 0) return &scalar();
    if (std::strcmp(forced, "avx2") == 0 && simd != nullptr && cpu_has_avx2_fma())
      return simd;
    return &scalar();
  }
  if (simd != nullptr && cpu_has_avx2_fma()) return simd;
  return &scalar();
}

}  // namespace

const Table& active() {
  static const Table* chosen = select();
  return *chosen;
}

}  // namespace nmr::kernels
