#pragma once

#include "wncs/kernels.hpp"

namespace wncs::kernels {

extern const Table scalar_table;
#if defined(WNCS_HAVE_AVX2)
extern const Table avx2_table;
#endif
#if defined(WNCS_HAVE_NEON)
extern const Table neon_table;
#endif

}  // namespace wncs::kernels
