#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace exovdc::kern {

// Dense inner-loop kernels behind the fixed-size math types. Every entry has a
// scalar reference implementation; wider variants (AVX2 on x86-64) are selected
// at runtime and must agree with the reference to tight tolerance (see
// tests/test_kernels.cpp). Matrices are row-major.
struct Ops {
  // y = A x, A 6x6
  void (*matvec6)(const double* A, const double* x, double* y);
  // y = A^T x, A 6x6
  void (*matvec6_t)(const double* A, const double* x, double* y);
  // C = A B, all 6x6
  void (*matmul66)(const double* A, const double* B, double* C);
  // C = A B^T, all 6x6
  void (*matmul66_nt)(const double* A, const double* B, double* C);
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // out[k] = squared distance between chi and row k of centers (j rows, d cols)
  void (*sq_dist)(const double* chi, const double* centers, std::size_t j,
                  std::size_t d, double* out);
  // W += scale * psi err^T, W j-by-m row-major
  void (*outer_acc)(double* W, const double* psi, const double* err,
                    double scale, std::size_t j, std::size_t m);
};

enum class Backend { scalar, avx2 };

const char* backend_name(Backend b);

// Backends usable on this machine (scalar always included).
std::vector<Backend> available_backends();

// Active dispatch table. Defaults to the widest available backend unless the
// EXOVDC_KERNELS environment variable ("scalar" or "avx2") overrides it.
const Ops& ops();
Backend active_backend();

// Force a backend (tests, CLI). Returns false if unsupported on this machine.
bool set_backend(Backend b);

// Reference implementations, always available, independent of dispatch.
const Ops& scalar_ops();

}  // namespace exovdc::kern
