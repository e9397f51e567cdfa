// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace nmqc::kern {

#if defined(NMQC_HAVE_AVX2)
const Kernels* avx2_impl();  // kernels_avx2.cpp
#endif

const Kernels* avx2() {
#if defined(NMQC_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return avx2_impl();
  }
#endif
  return nullptr;
}

namespace {

struct Selection {
  const Kernels* set;
  const char* name;
};

Selection select() {
  // NMQC_KERNELS=scalar forces the reference path (handy for debugging).
  const char* forced = std::getenv("NMQC_KERNELS");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    return {&scalar(), "scalar"};
  }
  if (const Kernels* k = avx2()) {
    return {k, "avx2"};
  }
  return {&scalar(), "scalar"};
}

const Selection& selection() {
  static const Selection s = select();
  return s;
}

}  // namespace

const Kernels& active() { return *selection().set; }

std::string_view active_name() { return selection().name; }

}  // namespace nmqc::kern
