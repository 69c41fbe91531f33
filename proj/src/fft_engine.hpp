// Copyright 2026 The bfbconv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BFB_FFT_ENGINE_HPP
#define BFB_FFT_ENGINE_HPP

#include <complex>
#include <vector>

namespace bfb {

struct Grid;

// Cached FFTW c2c plans per grid dimension.  The z offset of the extended
// box (samples at z = 2j/nz - 1) is absorbed by a (-1)^jz twiddle so that
// the stored coefficients are the analytic Fourier coefficients with
// respect to exp(i*(kx*x + ky*y + kz*z)).
class FftEngine {
 public:
  static FftEngine& get(const Grid& g);

  // physical (real, nx*ny*nz) -> normalized coefficients
  void forward(const double* phys, std::complex<double>* spec);

  // coefficients -> physical; returns max |imag| of the output samples
  double inverse(const std::complex<double>* spec, double* phys);

  FftEngine(const FftEngine&) = delete;
  FftEngine& operator=(const FftEngine&) = delete;

 private:
  FftEngine(int nx, int ny, int nz);
  ~FftEngine();

  int nx_, ny_, nz_, n_;
  void* plan_fwd_;  // fftw_plan
  void* plan_bwd_;
  std::vector<std::complex<double>> buf_in_, buf_out_;
};

}  // namespace bfb

#endif  // BFB_FFT_ENGINE_HPP
