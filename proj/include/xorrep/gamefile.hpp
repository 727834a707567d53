// JSON game files: keys sigma, gamma, phi, modulus and support entries
// {x, y, z, p: "num/den", t}.

#pragma once

#include <string>

#include "xorrep/game.hpp"

namespace xorrep {

// Strict "num/den" with den > 0.
Rational parse_rational(const std::string& s);

// Throws InputError on malformed text, unknown keys or failed validation.
XorGame parse_game(const std::string& text);
XorGame read_game_file(const std::string& path);

// Canonical form: fixed key order, support sorted by symbol indices,
// probabilities in lowest terms.
std::string serialize_game(const XorGame& game);

}  // namespace xorrep
