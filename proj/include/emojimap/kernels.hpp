#pragma once

// Float kernels backing the embedding / mapping inner loops.
//
// Scalar reference implementations live in kern::ref and are always
// available; the top-level entry points dispatch at runtime to the best
// ISA variant (AVX2 on x86-64, NEON on aarch64). force_isa() pins the
// dispatch for equivalence tests.

#include <cstddef>
#include <string_view>

namespace emojimap::kern {

enum class Isa { Scalar, Avx2, Neon };

bool isa_supported(Isa isa);
Isa active_isa();
void force_isa(Isa isa);
std::string_view isa_name(Isa isa);

float dot(const float* a, const float* b, std::size_t n);
// y += alpha * x
void axpy(float alpha, const float* x, float* y, std::size_t n);
void scale(float alpha, float* x, std::size_t n);
float nrm2(const float* a, std::size_t n);

namespace ref {
float dot(const float* a, const float* b, std::size_t n);
void axpy(float alpha, const float* x, float* y, std::size_t n);
void scale(float alpha, float* x, std::size_t n);
float nrm2(const float* a, std::size_t n);
}  // namespace ref

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
float dot(const float* a, const float* b, std::size_t n);
void axpy(float alpha, const float* x, float* y, std::size_t n);
void scale(float alpha, float* x, std::size_t n);
float nrm2(const float* a, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
float dot(const float* a, const float* b, std::size_t n);
void axpy(float alpha, const float* x, float* y, std::size_t n);
void scale(float alpha, float* x, std::size_t n);
float nrm2(const float* a, std::size_t n);
}  // namespace neon
#endif

}  // namespace emojimap::kern
