#include "dhr/family.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "dhr/error.hpp"
#include "dhr/parse.hpp"

namespace dhr {

ConcreteOp FamilySpec::op() const {
  ConcreteOp L;
  L.n = n;
  L.a = a;
  return L;
}

std::vector<RatFunc> hypergeometric_coefficients(const HypergeometricParams &p) {
  // expand prod (theta + root) as a polynomial in theta
  std::vector<Rational> roots{p.r1, p.r2, 1 - p.r2, 1 - p.r1};
  UPoly prod(Rational(1));
  for (auto &r : roots) prod *= UPoly(std::vector<Rational>{r, 1});
  RatFunc z = RatFunc::z();
  RatFunc scale = RatFunc(p.c) * z / (RatFunc(Rational(1)) - RatFunc(p.c) * z);
  std::vector<RatFunc> a;
  for (int i = 0; i < 4; ++i) a.push_back(scale * RatFunc(prod.coeff(i)));
  return a;
}

FamilySpec hypergeometric_family(const std::string &name, const HypergeometricParams &p) {
  FamilySpec f;
  f.name = name;
  f.n = 3;
  f.hyper = p;
  f.a = hypergeometric_coefficients(p);
  return f;
}

const std::vector<FamilySpec> &table1_presets() {
  static const std::vector<FamilySpec> presets = [] {
    struct Row {
      const char *structure;
      long p1, q1, p2, q2;
      Integer c;
    };
    auto pw = [](long b, unsigned e) { return ipow(Integer(b), e); };
    std::vector<Row> rows = {
        {"X(5)⊂P^4", 1, 5, 2, 5, pw(5, 5)},
        {"X(6)⊂P^4(2,1,1,1,1)", 1, 6, 2, 6, pw(2, 5) * pw(3, 6)},
        {"X(8)⊂P^4(4,1,1,1,1)", 1, 8, 3, 8, pw(2, 18)},
        {"X(10)⊂P^4(5,2,1,1,1)", 1, 10, 3, 10, pw(2, 9) * pw(5, 6)},
        {"X(3,3)⊂P^5", 1, 3, 1, 3, pw(3, 6)},
        {"X(2,4)⊂P^5", 1, 4, 2, 4, pw(2, 10)},
        {"X(2,2,3)⊂P^6", 1, 3, 1, 2, pw(2, 4) * pw(3, 3)},
        {"X(2,2,2,2)⊂P^7", 1, 2, 1, 2, pw(2, 8)},
        {"X(4,4)⊂P^5(2,2,1,1,1,1)", 1, 4, 1, 4, pw(2, 12)},
        {"X(6,6)⊂P^5(3,3,2,2,1,1)", 1, 6, 1, 6, pw(2, 8) * pw(3, 6)},
        {"X(3,4)⊂P^5(2,1,1,1,1,1)", 1, 4, 1, 3, pw(2, 6) * pw(3, 3)},
        {"X(2,6)⊂P^5(3,1,1,1,1,1)", 1, 6, 3, 6, pw(2, 8) * pw(3, 3)},
        {"X(4,6)⊂P^5(3,2,2,1,1,1)", 1, 6, 1, 4, pw(2, 10) * pw(3, 3)},
        {"X(2,12)⊂P^5(6,4,1,1,1,1)", 1, 12, 5, 12, pw(12, 6)},
    };
    std::vector<FamilySpec> out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row &r = rows[i];
      HypergeometricParams p{make_rational(r.p1, r.q1), make_rational(r.p2, r.q2), Rational(r.c)};
      FamilySpec f = hypergeometric_family(i == 0 ? "quintic" : "table1:" + std::to_string(i + 1), p);
      f.index = static_cast<int>(i + 1);
      f.structure = r.structure;
      out.push_back(std::move(f));
    }
    return out;
  }();
  return presets;
}

std::optional<FamilySpec> find_preset(const std::string &key) {
  const auto &presets = table1_presets();
  std::string k = key;
  if (k == "quintic") return presets[0];
  if (k.rfind("table1:", 0) == 0) k = k.substr(7);
  if (!k.empty() && k.find_first_not_of("0123456789") == std::string::npos) {
    int idx = std::stoi(k);
    if (idx >= 1 && idx <= static_cast<int>(presets.size())) return presets[idx - 1];
    return std::nullopt;
  }
  for (auto &f : presets) {
    std::string label = f.structure.substr(0, f.structure.find("⊂"));
    if (key == f.structure || key == label) return f;
  }
  return std::nullopt;
}

namespace {

std::string trim(const std::string &s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string unquote(const std::string &v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  return v;
}

}  // namespace

FamilySpec parse_family_text(const std::string &text, const std::string &origin) {
  std::map<std::string, std::pair<std::string, int>> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    bool quoted = false;
    std::size_t cut = line.size();
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        cut = i;
        break;
      }
    }
    std::string body = trim(line.substr(0, cut));
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos)
      throw Error(origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(body.substr(0, eq));
    if (kv.count(key)) throw Error(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = {unquote(trim(body.substr(eq + 1))), lineno};
  }

  auto where = [&](const std::string &key) { return origin + ":" + std::to_string(kv.at(key).second); };
  auto rational = [&](const std::string &key) {
    try {
      return parse_rational(kv.at(key).first);
    } catch (const Error &) {
      throw Error(where(key) + ": malformed rational for '" + key + "'");
    }
  };

  FamilySpec f;
  f.name = kv.count("name") ? kv["name"].first : std::filesystem::path(origin).stem().string();
  if (kv.count("c0")) f.c0 = rational("c0");
  bool hyper = kv.count("r1") || kv.count("r2") || kv.count("c");
  if (hyper) {
    for (const char *k : {"r1", "r2", "c"})
      if (!kv.count(k)) throw Error(origin + ": hypergeometric family needs r1, r2 and c");
    if (kv.count("n") && kv["n"].first != "3") throw Error(where("n") + ": hypergeometric families have n = 3");
    FamilySpec h = hypergeometric_family(f.name, {rational("r1"), rational("r2"), rational("c")});
    h.c0 = f.c0;
    return h;
  }
  if (!kv.count("n")) throw Error(origin + ": missing 'n'");
  f.n = std::stoi(kv["n"].first);
  if (f.n < 1) throw Error(where("n") + ": n must be at least 1");
  for (int i = 0; i <= f.n; ++i) {
    std::string key = "a" + std::to_string(i);
    if (!kv.count(key)) {
      f.a.emplace_back();
      continue;
    }
    try {
      f.a.push_back(parse_ratfunc(kv[key].first));
    } catch (const ParseError &e) {
      throw ParseError(where(key) + ": in '" + key + "': " + e.what(), e.position());
    }
  }
  for (auto &[key, v] : kv) {
    bool known = key == "name" || key == "n" || key == "c0";
    if (key.size() > 1 && key[0] == 'a' && key.find_first_not_of("0123456789", 1) == std::string::npos)
      known = std::stoi(key.substr(1)) <= f.n;
    if (!known) throw Error(origin + ":" + std::to_string(v.second) + ": unknown key '" + key + "'");
  }
  return f;
}

FamilySpec load_family_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open family file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_family_text(ss.str(), path);
}

FamilySpec load_family(const std::string &source) {
  if (auto p = find_preset(source)) return *p;
  if (std::filesystem::exists(source)) return load_family_file(source);
  throw Error("unknown preset or missing file '" + source + "'");
}

}  // namespace dhr
