#pragma once

#include "monobn/simd.hpp"

namespace monobn::simd::detail {

const KernelTable& scalar_table();

#if MONOBN_HAVE_AVX2
const KernelTable& avx2_table();
#endif

}  // namespace monobn::simd::detail
