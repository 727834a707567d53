#include "xorrep/gamefile.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace xorrep {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw InputError("unknown key \"" + key + "\" in " + where);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError(std::string("missing key \"") + key + "\" in " + where);
  return *it;
}

Alphabet read_alphabet(const json& root, const char* key) {
  const json& arr = require(root, key, "game");
  if (!arr.is_array()) throw InputError(std::string(key) + " must be an array of strings");
  std::vector<std::string> symbols;
  for (const auto& s : arr) {
    if (!s.is_string()) throw InputError(std::string(key) + " must be an array of strings");
    symbols.push_back(s.get<std::string>());
  }
  if (symbols.empty()) throw InputError(std::string(key) + " is empty");
  std::set<std::string> uniq(symbols.begin(), symbols.end());
  if (uniq.size() != symbols.size()) throw InputError(std::string(key) + " repeats a symbol");
  return Alphabet(std::move(symbols));
}

std::size_t read_symbol(const json& entry, const char* key, const Alphabet& alpha,
                        const std::string& where) {
  const json& v = require(entry, key, where);
  if (!v.is_string()) throw InputError(std::string(key) + " must be a symbol string in " + where);
  const std::string label = v.get<std::string>();
  if (!alpha.contains(label))
    throw InputError("unknown symbol \"" + label + "\" for " + key + " in " + where);
  return alpha.index(label);
}

}  // namespace

Rational parse_rational(const std::string& s) {
  static const std::regex pattern(R"(^\s*(-?[0-9]+)\s*/\s*([0-9]+)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, pattern))
    throw InputError("probability \"" + s + "\" is not of the form num/den");
  mpz_class num(m[1].str()), den(m[2].str());
  if (den == 0) throw InputError("probability \"" + s + "\" has a zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

XorGame parse_game(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw InputError("game file must be a JSON object");
  reject_unknown(root, {"sigma", "gamma", "phi", "modulus", "support"}, "game");
  XorGame game;
  Alphabet sigma = read_alphabet(root, "sigma");
  Alphabet gamma = read_alphabet(root, "gamma");
  Alphabet phi = read_alphabet(root, "phi");
  const json& mod = require(root, "modulus", "game");
  if (!mod.is_number_integer()) throw InputError("modulus must be an integer");
  game.modulus = mod.get<std::int64_t>();
  const json& supp = require(root, "support", "game");
  if (!supp.is_array()) throw InputError("support must be an array");
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < supp.size(); ++i) {
    const json& e = supp[i];
    const std::string where = "support entry " + std::to_string(i);
    if (!e.is_object()) throw InputError(where + " must be an object");
    reject_unknown(e, {"x", "y", "z", "p", "t"}, where);
    Triple q{read_symbol(e, "x", sigma, where), read_symbol(e, "y", gamma, where),
             read_symbol(e, "z", phi, where)};
    const json& p = require(e, "p", where);
    if (!p.is_string()) throw InputError("p must be a \"num/den\" string in " + where);
    const json& t = require(e, "t", where);
    if (!t.is_number_integer()) throw InputError("t must be an integer in " + where);
    atoms.push_back(Atom{q, parse_rational(p.get<std::string>())});
    if (game.target.count(q)) throw InputError("duplicate triple in " + where);
    game.target[q] = t.get<std::int64_t>();
  }
  game.dist = TripartiteDistribution(std::move(sigma), std::move(gamma), std::move(phi),
                                     std::move(atoms));
  validate(game);
  return game;
}

XorGame read_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_game(ss.str());
}

std::string serialize_game(const XorGame& game) {
  ordered_json root;
  root["sigma"] = game.dist.sigma.symbols();
  root["gamma"] = game.dist.gamma.symbols();
  root["phi"] = game.dist.phi.symbols();
  root["modulus"] = game.modulus;
  ordered_json supp = ordered_json::array();
  for (const auto& a : game.dist.support) {
    ordered_json e;
    e["x"] = game.dist.sigma.label(a.q.x);
    e["y"] = game.dist.gamma.label(a.q.y);
    e["z"] = game.dist.phi.label(a.q.z);
    e["p"] = rational_to_string(a.p);
    e["t"] = game.t(a.q);
    supp.push_back(std::move(e));
  }
  root["support"] = std::move(supp);
  return root.dump(2) + "\n";
}

}  // namespace xorrep
