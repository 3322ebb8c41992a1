#include <atomic>
#include <cstdlib>
#include <string_view>

#include "aitd/error.hpp"
#include "aitd/simd/kernels.hpp"

namespace aitd::simd {

#if !defined(AITD_HAVE_AVX2)
const KernelTable* avx2_table() { return nullptr; }
#endif

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(AITD_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return avx2_table() != nullptr && __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

namespace {

const KernelTable* select_default() {
  if (const char* env = std::getenv("AITD_KERNELS"); env != nullptr && std::string_view(env) == "scalar") {
    return &scalar_table();
  }
  if (isa_supported(Isa::Avx2)) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{select_default()};
  return table;
}

}  // namespace

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) throw Error(ErrorKind::Configuration, "kernel variant not supported on this host");
  current().store(isa == Isa::Avx2 ? avx2_table() : &scalar_table(), std::memory_order_release);
}

}  // namespace aitd::simd
