#pragma once

#include <stdexcept>
#include <string>

#include "profiles.hpp"

namespace stratprof {

// Syntax or resolution failure with the position that caused it.
struct ParseError : std::runtime_error {
    ParseError(std::string msg, int line, int col)
        : std::runtime_error("line " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
          line(line),
          col(col) {}
    int line, col;
};

// Reads a game document:
//
//   agents NAME+
//   param NAME >= INT
//   def NAME(n) = BODY
//   root NAME(INT)
//
//   BODY  := leaf { NAME: EXPR (, NAME: EXPR)* }
//          | node AGENT (l|r) CHILD CHILD
//   CHILD := NAME(n) | NAME(n+INT) | ( BODY )
//   EXPR  := integer affine combination of n, declared parameters and
//            integer literals, with +, - and * by an integer literal
//
// '#' starts a comment.  Inline child bodies become definitions of their own,
// named after the parent with _l/_r suffixes.  Negative child shifts are
// syntax errors.  Throws ParseError with line and column on any failure.
ProfileSystem parse(const std::string &text);

// parse() followed by validate(); the first diagnostic becomes a ParseError.
ProfileSystem parse_validated(const std::string &text);

// Canonical rendering: agents, parameter bounds, definitions in declaration
// order (one per line, no inline bodies), then the root.  parse(print(s))
// reconstructs s exactly, and print(parse(d)) == d for documents already in
// this form.
std::string print(const ProfileSystem &sys);

// A single leaf body, e.g. "leaf { Alice: 4, Bob: 2 }", evaluated to concrete
// integers; used for truncation padding files.
Payoff parse_padding(const std::string &text, const ParamValues &params);

}  // namespace stratprof
