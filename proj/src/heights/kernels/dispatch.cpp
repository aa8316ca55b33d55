#include <cstdlib>
#include <string_view>

#include "arborab/heights/kernels.hpp"

namespace arborab::heights::kernels {

#ifndef ARBORAB_BUILD_AVX2
const KernelTable* avx2_kernels() { return nullptr; }
#endif

const KernelTable& active_kernels() {
  static const KernelTable& table = [] () -> const KernelTable& {
    const char* forced = std::getenv("ARBORAB_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
    if (const KernelTable* fast = avx2_kernels()) return *fast;
    return scalar_kernels();
  }();
  return table;
}

}  // namespace arborab::heights::kernels
