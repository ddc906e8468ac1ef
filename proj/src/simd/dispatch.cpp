#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qrx/simd/kernels.hpp"

namespace qrx::simd {
namespace {

bool cpu_supports(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(QRX_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::kAvx512:
#if defined(QRX_HAVE_AVX512)
      return __builtin_cpu_supports("avx512f");
#else
      return false;
#endif
    case Isa::kNeon:
#if defined(QRX_HAVE_NEON)
      return true;  // mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

constexpr KernelTable kScalarTable{Isa::kScalar, &scalar::and_xor_fold};
#if defined(QRX_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Isa::kAvx2, &avx2::and_xor_fold};
#endif
#if defined(QRX_HAVE_AVX512)
constexpr KernelTable kAvx512Table{Isa::kAvx512, &avx512::and_xor_fold};
#endif
#if defined(QRX_HAVE_NEON)
constexpr KernelTable kNeonTable{Isa::kNeon, &neon::and_xor_fold};
#endif

const KernelTable* table_ptr(Isa isa) noexcept {
  if (!cpu_supports(isa)) return nullptr;
  switch (isa) {
    case Isa::kScalar:
      return &kScalarTable;
#if defined(QRX_HAVE_AVX2)
    case Isa::kAvx2:
      return &kAvx2Table;
#endif
#if defined(QRX_HAVE_AVX512)
    case Isa::kAvx512:
      return &kAvx512Table;
#endif
#if defined(QRX_HAVE_NEON)
    case Isa::kNeon:
      return &kNeonTable;
#endif
    default:
      return nullptr;
  }
}

const KernelTable& pick_active() {
  if (const char* forced = std::getenv("QRX_ISA"); forced != nullptr && *forced != '\0') {
    return kernels_for(parse_isa(forced));
  }
  for (Isa isa : {Isa::kAvx512, Isa::kAvx2, Isa::kNeon}) {
    if (const KernelTable* t = table_ptr(isa)) return *t;
  }
  return kScalarTable;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
    case Isa::kAvx512: return "avx512";
    case Isa::kNeon: return "neon";
  }
  return "unknown";
}

Isa parse_isa(std::string_view name) {
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kAvx512, Isa::kNeon}) {
    if (name == isa_name(isa)) return isa;
  }
  throw std::invalid_argument("unknown ISA '" + std::string(name) + "'");
}

bool isa_available(Isa isa) noexcept { return table_ptr(isa) != nullptr; }

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::kScalar, Isa::kAvx2, Isa::kAvx512, Isa::kNeon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& kernels_for(Isa isa) {
  if (const KernelTable* t = table_ptr(isa)) return *t;
  throw std::invalid_argument("ISA '" + std::string(isa_name(isa)) +
                              "' is not available on this build/CPU");
}

const KernelTable& active_kernels() {
  static const KernelTable& table = pick_active();
  return table;
}

}  // namespace qrx::simd
