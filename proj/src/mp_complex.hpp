#pragma once

// Minimal RAII wrappers over MPFR for the high-precision Jones accumulator.

#include <mpfr.h>

#include <cmath>
#include <complex>
#include <utility>

namespace twistvol::detail {

class MpReal {
 public:
  explicit MpReal(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  MpReal(const MpReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  MpReal(MpReal&& o) noexcept {
    // Steal by swapping with a minimal placeholder.
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  MpReal& operator=(const MpReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  MpReal& operator=(MpReal&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MpReal() { mpfr_clear(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

class MpComplex {
 public:
  explicit MpComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}

  MpReal& re() noexcept { return re_; }
  MpReal& im() noexcept { return im_; }
  const MpReal& re() const noexcept { return re_; }
  const MpReal& im() const noexcept { return im_; }

  void set(long re, long im) {
    mpfr_set_si(re_.get(), re, MPFR_RNDN);
    mpfr_set_si(im_.get(), im, MPFR_RNDN);
  }
  void set(const MpComplex& o) {
    mpfr_set(re_.get(), o.re_.get(), MPFR_RNDN);
    mpfr_set(im_.get(), o.im_.get(), MPFR_RNDN);
  }
  bool is_zero() const { return mpfr_zero_p(re_.get()) && mpfr_zero_p(im_.get()); }

  /// *this = a * b. Must not alias a or b.
  void mul(const MpComplex& a, const MpComplex& b) {
    mpfr_fmms(re_.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_fmma(im_.get(), a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
  }
  void add(const MpComplex& a) {
    mpfr_add(re_.get(), re_.get(), a.re_.get(), MPFR_RNDN);
    mpfr_add(im_.get(), im_.get(), a.im_.get(), MPFR_RNDN);
  }
  void negate() {
    mpfr_neg(re_.get(), re_.get(), MPFR_RNDN);
    mpfr_neg(im_.get(), im_.get(), MPFR_RNDN);
  }
  /// *this = a / b. Must not alias a or b.
  void div(const MpComplex& a, const MpComplex& b) {
    const mpfr_prec_t prec = mpfr_get_prec(re_.get()) + 16;
    MpReal den(prec), nr(prec), ni(prec);
    mpfr_fmma(den.get(), b.re_.get(), b.re_.get(), b.im_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_fmma(nr.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_fmms(ni.get(), a.im_.get(), b.re_.get(), a.re_.get(), b.im_.get(), MPFR_RNDN);
    mpfr_div(re_.get(), nr.get(), den.get(), MPFR_RNDN);
    mpfr_div(im_.get(), ni.get(), den.get(), MPFR_RNDN);
  }
  /// log|z| as a double (z nonzero).
  double log_abs() const {
    MpReal h(mpfr_get_prec(re_.get()));
    mpfr_hypot(h.get(), re_.get(), im_.get(), MPFR_RNDN);
    mpfr_log(h.get(), h.get(), MPFR_RNDN);
    return h.to_double();
  }
  double arg() const {
    MpReal a(53);
    mpfr_atan2(a.get(), im_.get(), re_.get(), MPFR_RNDN);
    return a.to_double();
  }
  /// Binary exponent of max(|re|, |im|); very negative for zero.
  long exponent() const {
    long e = -(1L << 40);
    if (!mpfr_zero_p(re_.get())) e = std::max(e, static_cast<long>(mpfr_get_exp(re_.get())));
    if (!mpfr_zero_p(im_.get())) e = std::max(e, static_cast<long>(mpfr_get_exp(im_.get())));
    return e;
  }
  std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

 private:
  MpReal re_;
  MpReal im_;
};

}  // namespace twistvol::detail
