#include "spade/numerics.hpp"

#include <cstdio>
#include <ios>

namespace spade {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17e", x);
  return buf;
}

std::string format_real(const real256& x) {
  return x.str(digits10_of<real256>(), std::ios_base::scientific);
}

std::string format_real(const real512& x) {
  return x.str(digits10_of<real512>(), std::ios_base::scientific);
}

PrecisionContext make_context(int bits, int quad_nodes) {
  if (bits < 64)
    throw Error(ErrorCode::InsufficientPrecision,
                "bits=" + std::to_string(bits) + " is below the 64-bit floor");
  if (quad_nodes < 64 || (quad_nodes & (quad_nodes - 1)) != 0)
    throw Error(ErrorCode::InvalidArgument,
                "quad_nodes=" + std::to_string(quad_nodes) + " must be a power of two >= 64");
  PrecisionContext ctx;
  ctx.bits = bits;
  ctx.quad_nodes = quad_nodes;
  ctx.rank_tol = std::exp2(-bits / 2.0);
  return ctx;
}

int working_bits(int bits) {
  if (bits <= 256) return 256;
  if (bits <= 512) return 512;
  throw Error(ErrorCode::UnsupportedPrecision,
              "bits=" + std::to_string(bits) + " exceeds the 512-bit working type");
}

}  // namespace spade
