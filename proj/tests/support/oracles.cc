// Copyright 2026 The MCE Authors. All Rights Reserved.
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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <map>
#include <stdexcept>

#include "mce/common/half.h"

namespace mce::testing {
namespace {

// Output size and leading pad of one spatial dimension.
std::pair<int64_t, int64_t> Window(int64_t in, int64_t k, int64_t s, bool same) {
  if (!same) return {(in - k) / s + 1, 0};
  const int64_t out = (in + s - 1) / s;
  const int64_t total = std::max<int64_t>((out - 1) * s + k - in, 0);
  return {out, total / 2};
}

}  // namespace

int64_t DTensor::size() const {
  int64_t n = 1;
  for (int64_t d : shape) n *= d;
  return n;
}

DTensor FromTensor(const Tensor& t) {
  DTensor d{t.shape(), {}};
  const auto bytes = t.bytes();
  if (t.dtype() == DType::kFP32) {
    for (size_t i = 0; i < bytes.size(); i += 4) {
      float f;
      std::memcpy(&f, bytes.data() + i, 4);
      d.v.push_back(f);
    }
  } else if (t.dtype() == DType::kFP16) {
    for (size_t i = 0; i < bytes.size(); i += 2) {
      uint16_t h;
      std::memcpy(&h, bytes.data() + i, 2);
      d.v.push_back(HalfToFloat(h));
    }
  } else {
    throw std::invalid_argument("oracle tensors must be floating point");
  }
  return d;
}

DTensor OracleConv2D(const DTensor& x, const DTensor& w, int sh, int sw, bool same) {
  const int64_t n = x.shape[0], h = x.shape[1], wd = x.shape[2], ci = x.shape[3];
  const int64_t kh = w.shape[0], kw = w.shape[1], co = w.shape[3];
  const auto [oh, ph] = Window(h, kh, sh, same);
  const auto [ow, pw] = Window(wd, kw, sw, same);
  DTensor y{{n, oh, ow, co}, std::vector<double>(n * oh * ow * co, 0.0)};
  for (int64_t b = 0; b < n; ++b)
    for (int64_t oy = 0; oy < oh; ++oy)
      for (int64_t ox = 0; ox < ow; ++ox)
        for (int64_t o = 0; o < co; ++o) {
          double acc = 0.0;
          for (int64_t ky = 0; ky < kh; ++ky)
            for (int64_t kx = 0; kx < kw; ++kx) {
              const int64_t iy = oy * sh + ky - ph;
              const int64_t ix = ox * sw + kx - pw;
              if (iy < 0 || iy >= h || ix < 0 || ix >= wd) continue;
              for (int64_t c = 0; c < ci; ++c) {
                acc += x.v[((b * h + iy) * wd + ix) * ci + c] * w.v[((ky * kw + kx) * ci + c) * co + o];
              }
            }
          y.v[((b * oh + oy) * ow + ox) * co + o] = acc;
        }
  return y;
}

DTensor OracleDepthwise(const DTensor& x, const DTensor& w, int sh, int sw, bool same) {
  const int64_t n = x.shape[0], h = x.shape[1], wd = x.shape[2], c = x.shape[3];
  const int64_t kh = w.shape[0], kw = w.shape[1];
  const auto [oh, ph] = Window(h, kh, sh, same);
  const auto [ow, pw] = Window(wd, kw, sw, same);
  DTensor y{{n, oh, ow, c}, std::vector<double>(n * oh * ow * c, 0.0)};
  for (int64_t b = 0; b < n; ++b)
    for (int64_t oy = 0; oy < oh; ++oy)
      for (int64_t ox = 0; ox < ow; ++ox)
        for (int64_t ch = 0; ch < c; ++ch) {
          double acc = 0.0;
          for (int64_t ky = 0; ky < kh; ++ky)
            for (int64_t kx = 0; kx < kw; ++kx) {
              const int64_t iy = oy * sh + ky - ph;
              const int64_t ix = ox * sw + kx - pw;
              if (iy < 0 || iy >= h || ix < 0 || ix >= wd) continue;
              acc += x.v[((b * h + iy) * wd + ix) * c + ch] * w.v[(ky * kw + kx) * c + ch];
            }
          y.v[((b * oh + oy) * ow + ox) * c + ch] = acc;
        }
  return y;
}

DTensor OracleMatMul(const DTensor& a, const DTensor& b) {
  const int64_t n = a.shape[0], k = a.shape[1], m = b.shape[1];
  DTensor y{{n, m}, std::vector<double>(n * m, 0.0)};
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = 0; j < m; ++j) {
      double acc = 0.0;
      for (int64_t t = 0; t < k; ++t) acc += a.v[i * k + t] * b.v[t * m + j];
      y.v[i * m + j] = acc;
    }
  return y;
}

DTensor OracleRelu6(const DTensor& x) {
  DTensor y = x;
  for (double& v : y.v) v = v < 0 ? 0 : (v > 6 ? 6 : v);
  return y;
}

DTensor OraclePad(const DTensor& x, const std::vector<std::array<int32_t, 2>>& pads) {
  const size_t rank = x.shape.size();
  DTensor y;
  for (size_t d = 0; d < rank; ++d) y.shape.push_back(x.shape[d] + pads[d][0] + pads[d][1]);
  y.v.assign(y.size(), 0.0);
  std::vector<int64_t> idx(rank, 0);
  for (int64_t i = 0; i < x.size(); ++i) {
    int64_t rem = i;
    for (size_t d = rank; d-- > 0;) {
      idx[d] = rem % x.shape[d];
      rem /= x.shape[d];
    }
    int64_t flat = 0;
    for (size_t d = 0; d < rank; ++d) flat = flat * y.shape[d] + idx[d] + pads[d][0];
    y.v[flat] = x.v[i];
  }
  return y;
}

DTensor OracleMean(const DTensor& x) {
  const int64_t n = x.shape[0], hw = x.shape[1] * x.shape[2], c = x.shape[3];
  DTensor y{{n, c}, std::vector<double>(n * c, 0.0)};
  for (int64_t b = 0; b < n; ++b)
    for (int64_t ch = 0; ch < c; ++ch) {
      double acc = 0.0;
      for (int64_t p = 0; p < hw; ++p) acc += x.v[(b * hw + p) * c + ch];
      y.v[b * c + ch] = acc / static_cast<double>(hw);
    }
  return y;
}

DTensor OracleBinary(bool multiply, const DTensor& a, const DTensor& b) {
  const bool swap = a.size() < b.size() || (a.size() == b.size() && a.shape.size() < b.shape.size());
  const DTensor& big = swap ? b : a;
  const DTensor& small = swap ? a : b;
  DTensor y = big;
  for (int64_t i = 0; i < big.size(); ++i) {
    const double s = small.v[i % small.size()];
    const double l = swap ? s : big.v[i];
    const double r = swap ? big.v[i] : s;
    y.v[i] = multiply ? l * r : l + r;
  }
  return y;
}

std::vector<DTensor> OracleGraph(const Graph& graph, const Tensor& input) {
  std::map<NodeId, DTensor> memo;
  for (const GraphInput& in : graph.inputs()) memo[in.id] = FromTensor(input);
  std::function<const DTensor&(NodeId)> eval = [&](NodeId id) -> const DTensor& {
    if (auto it = memo.find(id); it != memo.end()) return it->second;
    const Node& n = graph.node(id);
    std::vector<const DTensor*> a;
    for (NodeId src : n.inputs) a.push_back(&eval(src));
    DTensor out;
    const int sh = n.attrs.strides[0];
    const int sw = n.attrs.strides[1];
    const bool same = n.attrs.padding == Padding::kSame;
    switch (n.kind) {
      case OpKind::kConst: out = FromTensor(Tensor(n.output, n.payload)); break;
      case OpKind::kConv2D: out = OracleConv2D(*a[0], *a[1], sh, sw, same); break;
      case OpKind::kDepthwiseConv2dNative: out = OracleDepthwise(*a[0], *a[1], sh, sw, same); break;
      case OpKind::kMatMul: out = OracleMatMul(*a[0], *a[1]); break;
      case OpKind::kRelu6: out = OracleRelu6(*a[0]); break;
      case OpKind::kPad: out = OraclePad(*a[0], n.attrs.pads); break;
      case OpKind::kMean: out = OracleMean(*a[0]); break;
      case OpKind::kMul: out = OracleBinary(true, *a[0], *a[1]); break;
      case OpKind::kAddV2: out = OracleBinary(false, *a[0], *a[1]); break;
      case OpKind::kCast: throw std::invalid_argument("oracle graphs are FP32 only");
    }
    return memo.emplace(id, std::move(out)).first->second;
  };
  std::vector<DTensor> outputs;
  for (NodeId id : graph.outputs()) outputs.push_back(eval(id));
  return outputs;
}

double MaxAbsDiff(const DTensor& a, const DTensor& b) {
  if (a.shape != b.shape) throw std::invalid_argument("shape mismatch");
  double m = 0.0;
  for (size_t i = 0; i < a.v.size(); ++i) m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return m;
}

}  // namespace mce::testing
