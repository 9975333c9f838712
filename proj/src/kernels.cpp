#include "emojimap/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace emojimap::kern {

namespace ref {

float dot(const float* a, const float* b, std::size_t n) {
  float acc = 0.0f;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(float alpha, const float* x, float* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(float alpha, float* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

float nrm2(const float* a, std::size_t n) {
  return std::sqrt(dot(a, a, n));
}

}  // namespace ref

namespace {

struct Dispatch {
  Isa isa;
  float (*dot)(const float*, const float*, std::size_t);
  void (*axpy)(float, const float*, float*, std::size_t);
  void (*scale)(float, float*, std::size_t);
  float (*nrm2)(const float*, std::size_t);
};

Dispatch make_dispatch(Isa isa) {
  switch (isa) {
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2:
      return {Isa::Avx2, avx2::dot, avx2::axpy, avx2::scale, avx2::nrm2};
#endif
#if defined(__aarch64__)
    case Isa::Neon:
      return {Isa::Neon, neon::dot, neon::axpy, neon::scale, neon::nrm2};
#endif
    default:
      return {Isa::Scalar, ref::dot, ref::axpy, ref::scale, ref::nrm2};
  }
}

Isa detect_best() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
    return Isa::Avx2;
#elif defined(__aarch64__)
  return Isa::Neon;
#endif
  return Isa::Scalar;
}

Dispatch g_dispatch = make_dispatch(detect_best());

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return g_dispatch.isa; }

void force_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::runtime_error("ISA not supported on this CPU");
  g_dispatch = make_dispatch(isa);
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "?";
}

float dot(const float* a, const float* b, std::size_t n) { return g_dispatch.dot(a, b, n); }
void axpy(float alpha, const float* x, float* y, std::size_t n) { g_dispatch.axpy(alpha, x, y, n); }
void scale(float alpha, float* x, std::size_t n) { g_dispatch.scale(alpha, x, n); }
float nrm2(const float* a, std::size_t n) { return g_dispatch.nrm2(a, n); }

}  // namespace emojimap::kern
