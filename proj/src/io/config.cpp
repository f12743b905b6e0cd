#include <fstream>
#include <sstream>

#include "betatile/error.hpp"
#include "betatile/io.hpp"

namespace betatile {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* d = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = d[v & 15];
  return s;
}

QBeta qbeta_from_json(const FieldPtr& f, const json& j) {
  auto coord = [](const json& c) -> std::string {
    if (c.is_string()) return c.get<std::string>();
    if (c.is_number_integer()) return std::to_string(c.get<long long>());
    fail(Errc::BadConfig, "coordinates must be integers or \"p/q\" strings");
  };
  std::vector<std::string> cs;
  if (j.is_array()) {
    for (const auto& c : j) cs.push_back(coord(c));
  } else {
    cs.push_back(coord(j));  // a bare rational
  }
  if (int(cs.size()) > f->degree()) fail(Errc::BadConfig, "too many coordinates for the field");
  cs.resize(f->degree(), "0");
  try {
    return QBeta::parse(f, cs);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(Errc::BadConfig, std::string("bad rational: ") + e.what());
  }
}

std::vector<QBeta> samples_from_json(const FieldPtr& f, const json& j) {
  if (!j.is_array()) fail(Errc::BadConfig, "samples must be a list");
  std::vector<QBeta> out;
  for (const auto& x : j) out.push_back(qbeta_from_json(f, x));
  return out;
}

namespace {

std::vector<long> field_coeffs(const json& j) {
  if (!j.is_array() || j.size() < 2) fail(Errc::BadConfig, "\"field\" must list c_1..c_d with d >= 2");
  std::vector<long> c;
  for (const auto& v : j) {
    if (!v.is_number_integer()) fail(Errc::BadConfig, "field coefficients must be integers");
    c.push_back(v.get<long>());
  }
  return c;
}

std::vector<QBeta> digit_list(const FieldPtr& f, const json& j) {
  if (!j.is_array() || j.empty()) fail(Errc::BadConfig, "\"digits\" must be a nonempty list");
  std::vector<QBeta> out;
  for (const auto& d : j) out.push_back(qbeta_from_json(f, d));
  return out;
}

}  // namespace

RunConfig parse_config(const json& j) {
  if (!j.is_object()) fail(Errc::BadConfig, "config must be a JSON object");
  if (!j.contains("field")) fail(Errc::BadConfig, "missing \"field\"");
  RunConfig rc;
  rc.raw = j;
  rc.hash = hex64(fnv1a(j.dump()));
  rc.field = PisotField::make(field_coeffs(j.at("field")));
  const FieldPtr& f = rc.field;

  if (j.contains("preset")) {
    std::string p = j.at("preset").get<std::string>();
    auto alpha = [&]() {
      if (!j.contains("alpha")) fail(Errc::BadConfig, "preset " + p + " needs \"alpha\"");
      return qbeta_from_json(f, j.at("alpha"));
    };
    if (p == "greedy")
      rc.original = preset_greedy(f);
    else if (p == "lazy")
      rc.original = preset_lazy(f);
    else if (p == "pedicini")
      rc.original = preset_pedicini(f, digit_list(f, j.at("digits")));
    else if (p == "linear_mod1")
      rc.original = preset_linear_mod1(f, alpha());
    else if (p == "minimal_weight")
      rc.original = preset_minimal_weight(f, alpha());
    else if (p == "symmetric")
      rc.original = preset_symmetric(f);
    else
      fail(Errc::BadConfig, "unknown preset " + p);
  } else {
    for (const char* k : {"digits", "parts"})
      if (!j.contains(k)) fail(Errc::BadConfig, std::string("missing \"") + k + "\"");
    std::vector<QBeta> digits = digit_list(f, j.at("digits"));
    const json& parts = j.at("parts");
    if (!parts.is_array() || parts.size() != digits.size())
      fail(Errc::BadConfig, "\"parts\" needs one interval list per digit");
    std::vector<std::vector<Interval>> iv;
    for (const auto& pl : parts) {
      iv.emplace_back();
      for (const auto& x : pl) {
        if (!x.contains("lo") || !x.contains("hi")) fail(Errc::BadConfig, "intervals need \"lo\" and \"hi\"");
        iv.back().push_back({qbeta_from_json(f, x.at("lo")), qbeta_from_json(f, x.at("hi"))});
      }
    }
    Side side = Side::Right;
    if (j.contains("side")) {
      std::string s = j.at("side").get<std::string>();
      if (s == "left")
        side = Side::Left;
      else if (s != "right")
        fail(Errc::BadConfig, "\"side\" must be right or left");
    }
    rc.original = BetaTransform::build(f, digits, iv, side);
  }
  rc.transform = rc.original;
  if (j.value("restrict", false)) {
    VData v = compute_v(rc.original);
    Density h = invariant_density(rc.original, v);
    rc.transform = restrict_to_support(rc.original, v, h);
    rc.restricted = true;
  }
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadConfig, "cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    fail(Errc::BadConfig, std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

}  // namespace betatile
