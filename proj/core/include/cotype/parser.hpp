#ifndef COTYPE_PARSER_HPP
#define COTYPE_PARSER_HPP

#include <map>
#include <string>
#include <vector>

#include "cotype/datasystem.hpp"
#include "cotype/program.hpp"
#include "cotype/term.hpp"

namespace cotype {

/// A parsed session file: one constructors block, named systems and programs.
/// Systems come back validated and programs certified; all program blocks
/// share one equation space (they must be pairwise compatible), so terms may
/// mix functions from different blocks.
struct Session {
  Vocabulary vocabulary{{{"o", 0}}};
  std::map<std::string, ValidatedSystem> systems;
  std::map<std::string, FunctionId> program_principals;  // block name -> fn
  CertifiedProgram program;  // all equations, plus the standard ones

  const ValidatedSystem& system(const std::string& name) const;
  /// Principal of the named program block; throws UnknownIdentifier.
  FunctionId principal_of(const std::string& name) const;
};

/// Parses session text; throws Error(SyntaxError) with line:column, or the
/// validation/wellformedness errors of the datasystem and program modules.
Session parse_session(const std::string& text);

Session parse_session_file(const std::string& path);

/// Parses a term expression (e.g. "add(s(0), 0)") against a session's
/// vocabulary and function signatures; unknown identifiers parse as
/// variables.
TermPtr parse_term(const Session& s, const std::string& text);

}  // namespace cotype

#endif
