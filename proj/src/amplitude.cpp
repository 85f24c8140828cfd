// SPDX-License-Identifier: Apache-2.0
#include "lcq/amplitude.hpp"

#include <cmath>
#include <cstring>

#include "json.hpp"
#include "lcq/dirac.hpp"
#include "lcq/errors.hpp"
#include "lcq/simd/simd.hpp"

namespace lcq {

// ---------------------------------------------------------------------------
// FieldKind
// ---------------------------------------------------------------------------

FieldKind FieldKind::scalar(double m) {
  if (!(m >= 0.0)) throw InvalidMassError("scalar mass must be >= 0");
  return {FieldType::Scalar, m};
}

FieldKind FieldKind::dirac(double m) {
  if (!(m > 0.0)) throw InvalidMassError("dirac mass must be > 0");
  return {FieldType::Dirac, m};
}

FieldKind FieldKind::photon() { return {FieldType::Photon, 0.0}; }

int FieldKind::components() const {
  switch (type) {
    case FieldType::Scalar: return 1;
    case FieldType::Dirac: return 4;
    case FieldType::Photon: return 2;
  }
  return 1;
}

std::string FieldKind::name() const {
  switch (type) {
    case FieldType::Scalar: return "scalar";
    case FieldType::Dirac: return "dirac";
    case FieldType::Photon: return "photon";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Profile
// ---------------------------------------------------------------------------

double Profile::eval(double p, double mass) const {
  switch (family) {
    case Family::gaussian:
      return std::exp(-p * p / (4.0 * sigma * sigma));
    case Family::energy_exp:
      return std::exp(-rate * std::sqrt(p * p + mass * mass));
    case Family::power_iso: {
      const double z = p / scale;
      return std::pow(1.0 + z * z, -0.5 * power);
    }
    case Family::ir_test:
      return (sigma / std::max(p, 1e-300)) * std::exp(-p * p / (4.0 * sigma * sigma));
  }
  return 0.0;
}

void Profile::eval_batch(const double* p, double* out, std::size_t n, double mass) const {
  const auto& ops = simd::ops();
  switch (family) {
    case Family::gaussian: {
      const double c = -1.0 / (4.0 * sigma * sigma);
      std::vector<double> arg(n);
      for (std::size_t i = 0; i < n; ++i) arg[i] = c * p[i] * p[i];
      ops.exp_v(arg.data(), out, n);
      return;
    }
    case Family::energy_exp: {
      const double m2 = mass * mass;
      std::vector<double> arg(n);
      for (std::size_t i = 0; i < n; ++i) arg[i] = -rate * std::sqrt(p[i] * p[i] + m2);
      ops.exp_v(arg.data(), out, n);
      return;
    }
    default:
      for (std::size_t i = 0; i < n; ++i) out[i] = eval(p[i], mass);
  }
}

double Profile::tail_radius(double eps, double mass) const {
  eps = std::min(eps, 0.1);
  const double L = std::log(1.0 / eps);
  switch (family) {
    case Family::gaussian:
    case Family::ir_test:
      return sigma * (std::sqrt(2.0 * L) + 4.0);
    case Family::energy_exp: {
      double p = (L + 4.0) / (2.0 * rate) + mass;
      for (int it = 0; it < 3; ++it) {
        p = (L + 2.0 * std::log(std::max(p, 1.0)) + 4.0) / (2.0 * rate);
      }
      return p;
    }
    case Family::power_iso: {
      if (power <= 2.5) return 1e5;
      const double r = scale * std::pow(scale * scale / eps, 1.0 / (2.0 * power - 2.0));
      return std::min(1e5, std::max(r, 10.0 * scale));
    }
  }
  return 10.0;
}

double Profile::small_k_exponent() const {
  return family == Family::ir_test ? -1.0 : 0.0;
}

DecayHint Profile::decay_class() const {
  switch (family) {
    case Family::gaussian:
    case Family::ir_test:
      return DecayHint::gaussian;
    case Family::energy_exp:
      return DecayHint::exponential;
    case Family::power_iso:
      return DecayHint::power_law;
  }
  return DecayHint::gaussian;
}

// ---------------------------------------------------------------------------
// Tabulated3D
// ---------------------------------------------------------------------------

complexd Tabulated3D::eval(const Vec3& p) const {
  const double fx = (p.x - origin.x) / spacing;
  const double fy = (p.y - origin.y) / spacing;
  const double fz = (p.z - origin.z) / spacing;
  const int ix = static_cast<int>(std::floor(fx));
  const int iy = static_cast<int>(std::floor(fy));
  const int iz = static_cast<int>(std::floor(fz));
  if (ix < 0 || iy < 0 || iz < 0 || ix >= nx - 1 || iy >= ny - 1 || iz >= nz - 1) {
    return {0.0, 0.0};
  }
  const double tx = fx - ix, ty = fy - iy, tz = fz - iz;
  auto at = [&](int a, int b, int c) {
    return values[static_cast<std::size_t>((c * ny + b) * nx + a)];
  };
  complexd acc{0.0, 0.0};
  for (int dz = 0; dz < 2; ++dz) {
    for (int dy = 0; dy < 2; ++dy) {
      for (int dx = 0; dx < 2; ++dx) {
        const double wgt = (dx ? tx : 1.0 - tx) * (dy ? ty : 1.0 - ty) * (dz ? tz : 1.0 - tz);
        acc += wgt * at(ix + dx, iy + dy, iz + dz);
      }
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// MomentumAmplitude
// ---------------------------------------------------------------------------

namespace {

double legendre_p(int ell, double x) {
  if (ell == 0) return 1.0;
  if (ell == 1) return x;
  double p0 = 1.0, p1 = x;
  for (int k = 2; k <= ell; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

}  // namespace

complexd MomentumAmplitude::eval_scalar(const Vec3& p_in) const {
  Vec3 p = p_in;
  if (rapidity != 0.0) {
    const double p0 = std::sqrt(p.norm2() + kind.mass * kind.mass);
    p = boost_rapidity(FourVector{p0, p}, -rapidity, boost_axis).spatial();
  }
  if (table) return table->eval(p);
  complexd acc{0.0, 0.0};
  const double pn = p.norm();
  for (const Term& t : terms) {
    const double r = (p - t.momentum_center).norm();
    double val = t.profile.eval(r, kind.mass);
    if (t.ell > 0) {
      const double u = pn > 0.0 ? p.dot(t.axis) / pn : 0.0;
      val *= legendre_p(t.ell, u);
    }
    complexd phase{1.0, 0.0};
    if (t.shift.norm2() > 0.0) {
      const double arg = -p.dot(t.shift);
      phase = {std::cos(arg), std::sin(arg)};
    }
    acc += t.coef * val * phase;
  }
  return acc;
}

void MomentumAmplitude::eval_scalar_batch(const double* px, const double* py,
                                          const double* pz, complexd* out,
                                          std::size_t n) const {
  if (rapidity != 0.0 || table) {
    for (std::size_t i = 0; i < n; ++i) out[i] = eval_scalar({px[i], py[i], pz[i]});
    return;
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = {0.0, 0.0};
  std::vector<double> r(n), g(n), arg(n), s(n), c(n);
  const auto& ops = simd::ops();
  for (const Term& t : terms) {
    const bool centered = t.momentum_center.norm2() == 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = px[i] - t.momentum_center.x;
      const double dy = py[i] - t.momentum_center.y;
      const double dz = pz[i] - t.momentum_center.z;
      r[i] = centered ? std::sqrt(px[i] * px[i] + py[i] * py[i] + pz[i] * pz[i])
                      : std::sqrt(dx * dx + dy * dy + dz * dz);
    }
    t.profile.eval_batch(r.data(), g.data(), n, kind.mass);
    if (t.ell > 0) {
      for (std::size_t i = 0; i < n; ++i) {
        const double pn = std::sqrt(px[i] * px[i] + py[i] * py[i] + pz[i] * pz[i]);
        const double u =
            pn > 0.0 ? (px[i] * t.axis.x + py[i] * t.axis.y + pz[i] * t.axis.z) / pn : 0.0;
        g[i] *= legendre_p(t.ell, u);
      }
    }
    if (t.shift.norm2() > 0.0) {
      for (std::size_t i = 0; i < n; ++i) {
        arg[i] = -(px[i] * t.shift.x + py[i] * t.shift.y + pz[i] * t.shift.z);
      }
      ops.sincos_v(arg.data(), s.data(), c.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        out[i] += t.coef * complexd{g[i] * c[i], g[i] * s[i]};
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) out[i] += t.coef * g[i];
    }
  }
}

std::array<complexd, 4> MomentumAmplitude::eval_dirac(const Vec3& p) const {
  if (kind.type != FieldType::Dirac) {
    throw KindMismatchError("eval_dirac on a non-Dirac amplitude");
  }
  const Spinor up = dirac::u_plus(p, +1, kind.mass);
  const Spinor dn = dirac::u_plus(p, -1, kind.mass);
  std::array<complexd, 4> acc{};
  const double pn = p.norm();
  for (const Term& t : terms) {
    const double r = (p - t.momentum_center).norm();
    double val = t.profile.eval(r, kind.mass);
    if (t.ell > 0) {
      val *= legendre_p(t.ell, pn > 0.0 ? p.dot(t.axis) / pn : 0.0);
    }
    complexd phase{1.0, 0.0};
    if (t.shift.norm2() > 0.0) {
      const double arg = -p.dot(t.shift);
      phase = {std::cos(arg), std::sin(arg)};
    }
    const complexd scalar_part = t.coef * val * phase;
    for (int a = 0; a < 4; ++a) {
      acc[a] += scalar_part * (t.spin[0] * up[a] + t.spin[1] * dn[a]);
    }
  }
  return acc;
}

std::array<complexd, 2> MomentumAmplitude::eval_photon(const Vec3& p) const {
  if (kind.type != FieldType::Photon) {
    throw KindMismatchError("eval_photon on a non-photon amplitude");
  }
  std::array<complexd, 2> acc{};
  const double pn = p.norm();
  for (const Term& t : terms) {
    const double r = (p - t.momentum_center).norm();
    double val = t.profile.eval(r, 0.0);
    if (t.ell > 0) {
      val *= legendre_p(t.ell, pn > 0.0 ? p.dot(t.axis) / pn : 0.0);
    }
    complexd phase{1.0, 0.0};
    if (t.shift.norm2() > 0.0) {
      const double arg = -p.dot(t.shift);
      phase = {std::cos(arg), std::sin(arg)};
    }
    const complexd scalar_part = t.coef * val * phase;
    acc[0] += scalar_part * t.spin[0];
    acc[1] += scalar_part * t.spin[1];
  }
  return acc;
}

double MomentumAmplitude::suggested_pmax(double tail_eps) const {
  if (table) {
    const Vec3 corner = origin_corner();
    return corner.norm();
  }
  double pmax = 1.0;
  const double per_term = tail_eps / std::max<std::size_t>(terms.size(), 1);
  for (const Term& t : terms) {
    pmax = std::max(pmax, t.momentum_center.norm() +
                              t.profile.tail_radius(per_term, kind.mass));
  }
  if (rapidity != 0.0) pmax *= std::exp(std::abs(rapidity));
  return pmax;
}

Vec3 MomentumAmplitude::origin_corner() const {
  const double ex = table->origin.x + table->spacing * (table->nx - 1);
  const double ey = table->origin.y + table->spacing * (table->ny - 1);
  const double ez = table->origin.z + table->spacing * (table->nz - 1);
  const double cx = std::max(std::abs(table->origin.x), std::abs(ex));
  const double cy = std::max(std::abs(table->origin.y), std::abs(ey));
  const double cz = std::max(std::abs(table->origin.z), std::abs(ez));
  return {cx, cy, cz};
}

bool MomentumAmplitude::isotropic() const {
  if (table || rapidity != 0.0) return false;
  for (const Term& t : terms) {
    if (t.ell != 0 || t.momentum_center.norm2() != 0.0 || t.shift.norm2() != 0.0) {
      return false;
    }
  }
  return true;
}

bool MomentumAmplitude::shifted_radial() const {
  if (table || rapidity != 0.0) return false;
  for (const Term& t : terms) {
    if (t.momentum_center.norm2() != 0.0 && t.ell != 0) return false;
  }
  return true;
}

double MomentumAmplitude::small_k_exponent() const {
  if (table) return 0.0;
  double worst = 0.0;
  for (const Term& t : terms) {
    if (t.momentum_center.norm2() == 0.0) {
      worst = std::min(worst, t.profile.small_k_exponent() + t.ell);
    }
  }
  return worst;
}

MomentumAmplitude MomentumAmplitude::scaled(complexd factor) const {
  MomentumAmplitude out = *this;
  if (out.table) {
    for (auto& v : out.table->values) v *= factor;
  }
  for (Term& t : out.terms) t.coef *= factor;
  return out;
}

MomentumAmplitude MomentumAmplitude::plus_scaled(const MomentumAmplitude& other,
                                                 complexd factor) const {
  if (kind != other.kind) {
    throw KindMismatchError("cannot combine amplitudes of different kinds");
  }
  if (table || other.table) {
    throw UnsupportedError("linear combinations of tabulated amplitudes");
  }
  if (rapidity != other.rapidity || (rapidity != 0.0 && boost_axis != other.boost_axis)) {
    throw UnsupportedError("linear combinations across different boosts");
  }
  MomentumAmplitude out = *this;
  out.label = label + "+" + other.label;
  for (const Term& t : other.terms) {
    Term scaled_term = t;
    scaled_term.coef *= factor;
    out.terms.push_back(scaled_term);
  }
  // the slowest decay wins for domain sizing
  auto rank = [](DecayHint h) {
    return h == DecayHint::power_law ? 0 : (h == DecayHint::exponential ? 1 : 2);
  };
  if (rank(other.decay_hint) < rank(out.decay_hint)) out.decay_hint = other.decay_hint;
  return out;
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

MomentumAmplitude gaussian_packet(const FieldKind& kind, double sigma, const Vec3& center,
                                  const Vec3& shift, const std::string& label) {
  if (!(sigma > 0.0)) throw SchemaError("gaussian sigma must be > 0");
  MomentumAmplitude amp;
  amp.kind = kind;
  amp.decay_hint = DecayHint::gaussian;
  amp.label = label;
  Term t;
  t.profile.family = Profile::Family::gaussian;
  t.profile.sigma = sigma;
  t.momentum_center = center;
  t.shift = shift;
  amp.terms.push_back(t);
  return amp;
}

MomentumAmplitude energy_exp_packet(const FieldKind& kind, double rate, const Vec3& shift,
                                    const std::string& label) {
  if (!(rate > 0.0)) throw SchemaError("energy_exp rate must be > 0");
  MomentumAmplitude amp;
  amp.kind = kind;
  amp.decay_hint = DecayHint::exponential;
  amp.label = label;
  Term t;
  t.profile.family = Profile::Family::energy_exp;
  t.profile.rate = rate;
  t.shift = shift;
  amp.terms.push_back(t);
  return amp;
}

// ---------------------------------------------------------------------------
// JSON serialization
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& path,
                  std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool found = false;
    for (const char* key : allowed) {
      if (it.key() == key) {
        found = true;
        break;
      }
    }
    if (!found) throw SchemaError("unknown key '" + path + "." + it.key() + "'");
  }
}

json vec_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw SchemaError(path + ": expected [x,y,z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

json complex_to_json(const complexd& c) { return json::array({c.real(), c.imag()}); }

complexd complex_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path + ": expected [re,im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

const char* family_name(Profile::Family f) {
  switch (f) {
    case Profile::Family::gaussian: return "gaussian";
    case Profile::Family::energy_exp: return "energy_exp";
    case Profile::Family::power_iso: return "power_iso";
    case Profile::Family::ir_test: return "ir_test";
  }
  return "?";
}

const char* hint_name(DecayHint h) {
  switch (h) {
    case DecayHint::gaussian: return "gaussian";
    case DecayHint::exponential: return "exponential";
    case DecayHint::power_law: return "power_law";
  }
  return "?";
}

json profile_to_json(const Profile& p) {
  json j;
  j["family"] = family_name(p.family);
  switch (p.family) {
    case Profile::Family::gaussian:
    case Profile::Family::ir_test:
      j["sigma"] = p.sigma;
      break;
    case Profile::Family::energy_exp:
      j["rate"] = p.rate;
      break;
    case Profile::Family::power_iso:
      j["scale"] = p.scale;
      j["power"] = p.power;
      break;
  }
  return j;
}

Profile profile_from_json(const json& j, const std::string& path) {
  Profile p;
  if (!j.contains("family")) throw SchemaError(path + ".family: missing");
  const std::string fam = j["family"].get<std::string>();
  if (fam == "gaussian" || fam == "ir_test") {
    require_keys(j, path, {"family", "sigma"});
    p.family = fam == "gaussian" ? Profile::Family::gaussian : Profile::Family::ir_test;
    p.sigma = j.value("sigma", 1.0);
    if (!(p.sigma > 0.0)) throw SchemaError(path + ".sigma: must be > 0");
  } else if (fam == "energy_exp") {
    require_keys(j, path, {"family", "rate"});
    p.family = Profile::Family::energy_exp;
    p.rate = j.value("rate", 1.0);
    if (!(p.rate > 0.0)) throw SchemaError(path + ".rate: must be > 0");
  } else if (fam == "power_iso") {
    require_keys(j, path, {"family", "scale", "power"});
    p.family = Profile::Family::power_iso;
    p.scale = j.value("scale", 1.0);
    p.power = j.value("power", 4.0);
    if (!(p.scale > 0.0) || !(p.power > 2.0)) {
      throw SchemaError(path + ": power_iso requires scale > 0 and power > 2");
    }
  } else {
    throw SchemaError(path + ".family: unknown family '" + fam + "'");
  }
  return p;
}

}  // namespace

std::string amplitude_to_json(const MomentumAmplitude& amp) {
  json j;
  j["kind"] = amp.kind.name();
  j["mass"] = amp.kind.mass;
  j["label"] = amp.label;
  j["decay_hint"] = hint_name(amp.decay_hint);
  json terms = json::array();
  for (const Term& t : amp.terms) {
    json jt;
    jt["coef"] = complex_to_json(t.coef);
    jt["profile"] = profile_to_json(t.profile);
    if (t.ell != 0) {
      jt["ell"] = t.ell;
      jt["axis"] = vec_to_json(t.axis);
    }
    if (t.momentum_center.norm2() != 0.0) jt["momentum_center"] = vec_to_json(t.momentum_center);
    if (t.shift.norm2() != 0.0) jt["shift"] = vec_to_json(t.shift);
    if (amp.kind.type != FieldType::Scalar) {
      jt["spin"] = json::array({complex_to_json(t.spin[0]), complex_to_json(t.spin[1])});
    }
    terms.push_back(jt);
  }
  j["terms"] = terms;
  if (amp.rapidity != 0.0) {
    j["boost"] = {{"rapidity", amp.rapidity},
                  {"axis", amp.boost_axis == Axis::X   ? "x"
                           : amp.boost_axis == Axis::Y ? "y"
                                                       : "z"}};
  }
  return j.dump(2);
}

MomentumAmplitude amplitude_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw SchemaError(std::string("amplitude: invalid JSON: ") + e.what());
  }
  require_keys(j, "amplitude", {"kind", "mass", "label", "decay_hint", "terms", "boost"});
  if (!j.contains("kind")) throw SchemaError("amplitude.kind: missing");
  const std::string kind_name = j["kind"].get<std::string>();
  const double mass = j.value("mass", 0.0);
  MomentumAmplitude amp;
  if (kind_name == "scalar") {
    amp.kind = FieldKind::scalar(mass);
  } else if (kind_name == "dirac") {
    amp.kind = FieldKind::dirac(mass);
  } else if (kind_name == "photon") {
    if (mass != 0.0) throw SchemaError("amplitude.mass: photon mass must be 0");
    amp.kind = FieldKind::photon();
  } else {
    throw SchemaError("amplitude.kind: unknown kind '" + kind_name + "'");
  }
  amp.label = j.value("label", "");
  const std::string hint = j.value("decay_hint", "gaussian");
  if (hint == "gaussian") {
    amp.decay_hint = DecayHint::gaussian;
  } else if (hint == "exponential") {
    amp.decay_hint = DecayHint::exponential;
  } else if (hint == "power_law") {
    amp.decay_hint = DecayHint::power_law;
  } else {
    throw SchemaError("amplitude.decay_hint: unknown value '" + hint + "'");
  }
  if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty()) {
    throw SchemaError("amplitude.terms: need a non-empty array");
  }
  int idx = 0;
  for (const json& jt : j["terms"]) {
    const std::string path = "amplitude.terms[" + std::to_string(idx++) + "]";
    require_keys(jt, path,
                 {"coef", "profile", "ell", "axis", "momentum_center", "shift", "spin"});
    Term t;
    if (jt.contains("coef")) t.coef = complex_from_json(jt["coef"], path + ".coef");
    if (!jt.contains("profile")) throw SchemaError(path + ".profile: missing");
    t.profile = profile_from_json(jt["profile"], path + ".profile");
    t.ell = jt.value("ell", 0);
    if (t.ell < 0 || t.ell > 64) throw SchemaError(path + ".ell: out of range [0,64]");
    if (jt.contains("axis")) t.axis = vec_from_json(jt["axis"], path + ".axis").normalized();
    if (jt.contains("momentum_center")) {
      t.momentum_center = vec_from_json(jt["momentum_center"], path + ".momentum_center");
    }
    if (jt.contains("shift")) t.shift = vec_from_json(jt["shift"], path + ".shift");
    if (t.ell != 0 && t.momentum_center.norm2() != 0.0) {
      throw SchemaError(path + ": ell and momentum_center cannot be combined");
    }
    if (jt.contains("spin")) {
      const json& js = jt["spin"];
      if (!js.is_array() || js.size() != 2) {
        throw SchemaError(path + ".spin: expected [[re,im],[re,im]]");
      }
      t.spin[0] = complex_from_json(js[0], path + ".spin[0]");
      t.spin[1] = complex_from_json(js[1], path + ".spin[1]");
    }
    amp.terms.push_back(t);
  }
  if (j.contains("boost")) {
    if (amp.kind.type != FieldType::Scalar) {
      throw SchemaError("amplitude.boost: only scalar amplitudes support boosts");
    }
    const json& jb = j["boost"];
    require_keys(jb, "amplitude.boost", {"rapidity", "axis"});
    amp.rapidity = jb.value("rapidity", 0.0);
    const std::string ax = jb.value("axis", "z");
    amp.boost_axis = ax == "x" ? Axis::X : (ax == "y" ? Axis::Y : Axis::Z);
    if (ax != "x" && ax != "y" && ax != "z") {
      throw SchemaError("amplitude.boost.axis: expected x|y|z");
    }
  }
  return amp;
}

}  // namespace lcq
