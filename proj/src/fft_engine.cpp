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

#include "fft_engine.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "bfb/spectral.hpp"

namespace bfb {

namespace {
std::mutex g_engines_mutex;
std::map<std::tuple<int, int, int>, FftEngine*>& engines() {
  static auto* m = new std::map<std::tuple<int, int, int>, FftEngine*>();
  return *m;
}
std::mutex g_exec_mutex;  // plans share internal buffers
}  // namespace

FftEngine& FftEngine::get(const Grid& g) {
  std::lock_guard<std::mutex> lock(g_engines_mutex);
  auto key = std::make_tuple(g.nx, g.ny, g.nz);
  auto it = engines().find(key);
  if (it == engines().end()) {
    it = engines().emplace(key, new FftEngine(g.nx, g.ny, g.nz)).first;
  }
  return *it->second;
}

FftEngine::FftEngine(int nx, int ny, int nz)
    : nx_(nx), ny_(ny), nz_(nz), n_(nx * ny * nz), buf_in_(n_), buf_out_(n_) {
  auto* in = reinterpret_cast<fftw_complex*>(buf_in_.data());
  auto* out = reinterpret_cast<fftw_complex*>(buf_out_.data());
  // FFTW_ESTIMATE keeps the plan choice (and thus reduction order)
  // independent of runtime measurements.
  plan_fwd_ = fftw_plan_dft_3d(nx, ny, nz, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_3d(nx, ny, nz, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FftEngine::~FftEngine() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

void FftEngine::forward(const double* phys, std::complex<double>* spec) {
  std::lock_guard<std::mutex> lock(g_exec_mutex);
  for (int i = 0; i < n_; ++i) buf_in_[i] = {phys[i], 0.0};
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
  const double inv_n = 1.0 / n_;
  for (int jx = 0, i = 0; jx < nx_; ++jx)
    for (int jy = 0; jy < ny_; ++jy)
      for (int jz = 0; jz < nz_; ++jz, ++i) {
        const double tw = (jz & 1) ? -inv_n : inv_n;  // (-1)^q z offset
        spec[i] = buf_out_[i] * tw;
      }
}

double FftEngine::inverse(const std::complex<double>* spec, double* phys) {
  std::lock_guard<std::mutex> lock(g_exec_mutex);
  for (int jx = 0, i = 0; jx < nx_; ++jx)
    for (int jy = 0; jy < ny_; ++jy)
      for (int jz = 0; jz < nz_; ++jz, ++i) {
        buf_in_[i] = (jz & 1) ? -spec[i] : spec[i];
      }
  fftw_execute(static_cast<fftw_plan>(plan_bwd_));
  double max_imag = 0.0;
  for (int i = 0; i < n_; ++i) {
    phys[i] = buf_out_[i].real();
    max_imag = std::max(max_imag, std::abs(buf_out_[i].imag()));
  }
  return max_imag;
}

}  // namespace bfb
