#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

#include <json.hpp>

#include "dlf/characters.hpp"
#include "dlf/constants.hpp"
#include "dlf/lfunc.hpp"
#include "dlf/zeros.hpp"
#include "dlf/zerosum.hpp"

namespace dlf {
namespace io {

using Json = nlohmann::ordered_json;

// All floats are reported with 15 significant digits. CSV cells use the
// string directly; JSON stores the value re-parsed from it, so serialized
// numbers round-trip to exactly the printed precision.
inline std::string fmt15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::string(buf);
}

inline double round15(double x) {
  return std::strtod(fmt15(x).c_str(), nullptr);
}

inline Json character_record(const DirichletCharacter& chi) {
  const Complex tau = gauss_sum(chi);
  Json j;
  j["label"] = chi.label();
  j["modulus"] = chi.modulus();
  j["index"] = chi.index();
  j["conductor"] = chi.conductor();
  j["kappa"] = chi.parity_kappa();
  j["is_principal"] = chi.is_principal();
  j["is_primitive"] = chi.is_primitive();
  j["is_real"] = chi.is_real();
  j["gauss_sum_re"] = round15(tau.real());
  j["gauss_sum_im"] = round15(tau.imag());
  return j;
}

inline Json constants_record() {
  const ConstantsTable& tab = ConstantsTable::instance();
  Json j;
  j["gamma0"] = round15(tab.gamma0);
  j["gamma1"] = round15(tab.gamma1);
  j["eta0"] = round15(tab.eta[0]);
  j["eta1"] = round15(tab.eta[1]);
  Json bern = Json::array();
  for (int n = 0; n <= 12; ++n) bern.push_back(round15(bernoulli_double(n)));
  j["bernoulli"] = bern;
  return j;
}

inline Json eval_record(const DirichletCharacter& chi, const LEvaluation& ev) {
  Json j;
  j["label"] = chi.label();
  j["modulus"] = chi.modulus();
  j["sigma"] = round15(ev.s.real());
  j["t"] = round15(ev.s.imag());
  switch (ev.method) {
    case EvalMethod::hurwitz: j["method"] = "hurwitz"; break;
    case EvalMethod::afe: j["method"] = "afe"; break;
    case EvalMethod::euler_product_tail:
      j["method"] = "euler_product_tail";
      break;
  }
  j["value_re"] = round15(ev.value.real());
  j["value_im"] = round15(ev.value.imag());
  if (ev.derivative.has_value()) {
    j["derivative_re"] = round15(ev.derivative->real());
    j["derivative_im"] = round15(ev.derivative->imag());
  } else {
    j["derivative_re"] = nullptr;
    j["derivative_im"] = nullptr;
  }
  j["abs_error_bound"] = round15(ev.abs_error_bound);
  return j;
}

inline Json zeros_record(const ZeroList& list) {
  Json j;
  j["label"] = list.chi.label();
  j["modulus"] = list.chi.modulus();
  j["t_max"] = round15(list.t_max);
  if (list.certified_count.has_value()) {
    j["certified_count"] = *list.certified_count;
  } else {
    j["certified_count"] = nullptr;
  }
  Json rows = Json::array();
  for (std::size_t i = 0; i < list.zeros.size(); ++i) {
    const ZeroRecord& z = list.zeros[i];
    Json r;
    r["index"] = i;
    r["gamma"] = round15(z.gamma);
    r["residual_halfwidth"] = round15(z.residual_halfwidth);
    r["z_sign_left"] = z.z_sign_left;
    r["z_sign_right"] = z.z_sign_right;
    rows.push_back(r);
  }
  j["zeros"] = rows;
  return j;
}

inline std::string zeros_csv(const ZeroList& list) {
  std::string out = "index,gamma,residual_halfwidth\n";
  for (std::size_t i = 0; i < list.zeros.size(); ++i) {
    out += std::to_string(i);
    out += ',';
    out += fmt15(list.zeros[i].gamma);
    out += ',';
    out += fmt15(list.zeros[i].residual_halfwidth);
    out += '\n';
  }
  return out;
}

inline Json compare_record(const ComparisonReport& rep) {
  Json j;
  j["label"] = rep.label;
  j["modulus"] = rep.q;
  if (rep.fitted_C.has_value()) {
    j["fitted_C"] = round15(*rep.fitted_C);
  } else {
    j["fitted_C"] = nullptr;
  }
  Json rows = Json::array();
  for (const ComparisonRow& r : rep.rows) {
    Json row;
    row["t_requested"] = round15(r.t_requested);
    row["t_snapped"] = round15(r.t_snapped);
    row["re_empirical"] = round15(r.empirical.real());
    row["im_empirical"] = round15(r.empirical.imag());
    row["main_term"] = round15(r.main_term);
    row["re_remainder"] = round15(r.remainder.real());
    row["im_remainder"] = round15(r.remainder.imag());
    row["envelope_ratio"] = round15(r.envelope_ratio);
    row["uncond_ratio"] = round15(r.uncond_ratio);
    row["imag_fraction"] = round15(r.imag_fraction);
    rows.push_back(row);
  }
  j["rows"] = rows;
  return j;
}

// CSV column order is frozen; multi-character outputs prepend a label column.
inline std::string compare_csv_header(bool with_char) {
  std::string head;
  if (with_char) head += "char,";
  head +=
      "T_snapped,re_empirical,im_empirical,main_term,re_remainder,"
      "im_remainder,envelope_ratio\n";
  return head;
}

inline void append_compare_csv(std::string& out, const ComparisonReport& rep,
                               bool with_char) {
  for (const ComparisonRow& r : rep.rows) {
    if (with_char) {
      out += rep.label;
      out += ',';
    }
    out += fmt15(r.t_snapped);
    out += ',';
    out += fmt15(r.empirical.real());
    out += ',';
    out += fmt15(r.empirical.imag());
    out += ',';
    out += fmt15(r.main_term);
    out += ',';
    out += fmt15(r.remainder.real());
    out += ',';
    out += fmt15(r.remainder.imag());
    out += ',';
    out += fmt15(r.envelope_ratio);
    out += '\n';
  }
}

}  // namespace io
}  // namespace dlf
