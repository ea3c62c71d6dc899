#pragma once

#include <array>
#include <string>

namespace x0quad {

/// The matrix inducing the hyperelliptic involution: an Atkin–Lehner w_d, or
/// one of the two exceptional normalizers (beta40, beta48).
struct InvolutionSpec {
  enum class Kind { AtkinLehner, Matrix };

  Kind kind = Kind::AtkinLehner;
  long d = 1;
  std::string name;
  std::array<std::array<long, 2>, 2> matrix{};

  static InvolutionSpec atkin_lehner(long d) { return {Kind::AtkinLehner, d, "w" + std::to_string(d), {}}; }
  static InvolutionSpec beta40() { return {Kind::Matrix, 0, "beta40", {{{-10, 1}, {-120, 10}}}}; }
  static InvolutionSpec beta48() { return {Kind::Matrix, 0, "beta48", {{{-6, 1}, {-48, 6}}}}; }

  /// Degree of the induced isogeny: d for w_d, det of the matrix otherwise.
  long delta() const {
    if (kind == Kind::AtkinLehner) return d;
    return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
  }
};

}  // namespace x0quad
