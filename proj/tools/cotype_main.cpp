// cotype: equational programs over mixed inductive/coinductive data.
//
// Exit codes: 0 positive verdict, 1 refuted, 2 unknown, 3 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cotype/arith.hpp"
#include "cotype/error.hpp"
#include "cotype/evaluator.hpp"
#include "cotype/parser.hpp"
#include "cotype/typecheck.hpp"

using nlohmann::ordered_json;
using namespace cotype;

namespace {

struct CommonOpts {
  std::string file;
  std::size_t fuel = 10000;
  bool json = false;
};

int verdict_exit(const MembershipVerdict& v) {
  switch (v.kind) {
    case MembershipVerdict::Kind::Derived:
    case MembershipVerdict::Kind::VerifiedToHeight:
      return 0;
    case MembershipVerdict::Kind::Refuted:
      return 1;
    case MembershipVerdict::Kind::Unknown:
      return 2;
  }
  return 2;
}

ordered_json verdict_json(const MembershipVerdict& v) {
  ordered_json j;
  switch (v.kind) {
    case MembershipVerdict::Kind::Derived: j["kind"] = "derived"; break;
    case MembershipVerdict::Kind::VerifiedToHeight:
      j["kind"] = "verified_to_height";
      j["height"] = v.height;
      break;
    case MembershipVerdict::Kind::Refuted:
      j["kind"] = "refuted";
      j["height"] = v.height;
      break;
    case MembershipVerdict::Kind::Unknown: j["kind"] = "unknown"; break;
  }
  if (v.witness_addr) j["witness_address"] = to_string(*v.witness_addr);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

void emit(const CommonOpts& opts, const ordered_json& report,
          const std::string& human) {
  if (opts.json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << human << "\n";
}

// Builds a source for a term expression: literal when closed data, otherwise
// evaluated against the session's merged program.
SourcePtr source_from_expr(const Session& s, const std::string& expr,
                           const EvalConfig& cfg) {
  TermPtr t = parse_term(s, expr);
  std::vector<std::string> vars;
  collect_vars(t, vars);
  if (!vars.empty())
    throw Error(ErrorCode::UnboundRhsVariable,
                "term has free variable " + vars.front());
  if (is_data_term(t)) return literal_source(t);
  return as_source(s.program, Valuation{}, t, cfg);
}

std::vector<std::string> read_sample_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SyntaxError, "cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cotype: equational programs over inductive/coinductive data"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string system_name, type_name, program_name, term_expr;
  std::string left_expr, right_expr, fn_name, from_type, to_type;
  std::string samples_path, dump_path;
  std::size_t depth = 32, height = 32;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", opts.file, "session file")->required();
    cmd->add_option("--fuel", opts.fuel, "rewrite budget per head query");
    cmd->add_flag("--json", opts.json, "machine-readable report");
  };

  CLI::App* c_check = app.add_subcommand("check", "validate a session file");
  add_common(c_check);

  CLI::App* c_rank = app.add_subcommand("rank", "rank of a data-system");
  add_common(c_rank);
  c_rank->add_option("--system", system_name)->required();

  CLI::App* c_eval = app.add_subcommand("eval", "print a prefix of a term");
  add_common(c_eval);
  c_eval->add_option("--program", program_name)->required();
  c_eval->add_option("--term", term_expr)->required();
  c_eval->add_option("--depth", depth);

  CLI::App* c_type = app.add_subcommand("type", "type membership check");
  add_common(c_type);
  c_type->add_option("--system", system_name)->required();
  c_type->add_option("--type", type_name)->required();
  c_type->add_option("--term", term_expr)->required();
  c_type->add_option("--height", height);

  CLI::App* c_eq = app.add_subcommand("eq", "typed equality check");
  add_common(c_eq);
  c_eq->add_option("--system", system_name)->required();
  c_eq->add_option("--type", type_name)->required();
  c_eq->add_option("--left", left_expr)->required();
  c_eq->add_option("--right", right_expr)->required();
  c_eq->add_option("--depth", depth);

  CLI::App* c_claim = app.add_subcommand("claim", "per-sample typing claim");
  add_common(c_claim);
  c_claim->add_option("--system", system_name)->required();
  c_claim->add_option("--program", program_name)->required();
  c_claim->add_option("--fn", fn_name)->required();
  c_claim->add_option("--from", from_type)->required();
  c_claim->add_option("--to", to_type)->required();
  c_claim->add_option("--samples", samples_path)->required();
  c_claim->add_option("--height", height);

  CLI::App* c_repr = app.add_subcommand("repr", "numeric representation dump");
  add_common(c_repr);
  c_repr->add_option("--term", term_expr)->required();
  c_repr->add_option("--depth", depth);
  c_repr->add_option("--dump", dump_path);

  CLI11_PARSE(app, argc, argv);

  try {
    Session session = parse_session_file(opts.file);
    EvalConfig cfg;
    cfg.fuel = opts.fuel;
    cfg.max_depth = std::max(depth, height) + 64;
    CheckParams params;
    params.fuel = opts.fuel;
    params.height = height;

    ordered_json report;
    report["file"] = opts.file;
    report["fuel"] = opts.fuel;

    if (*c_check) {
      report["command"] = "check";
      ordered_json warnings = ordered_json::array();
      for (const auto& [name, sys] : session.systems)
        for (const std::string& w : sys.warnings())
          warnings.push_back(name + ": " + w);
      report["systems"] = session.systems.size();
      report["equations"] = session.program.equations().size();
      report["warnings"] = warnings;
      report["exit_code"] = 0;
      std::string human = "ok: " + std::to_string(session.systems.size()) +
                          " system(s), " +
                          std::to_string(session.program.equations().size()) +
                          " equation(s)";
      for (const auto& w : warnings) human += "\nwarning: " + w.get<std::string>();
      emit(opts, report, human);
      return 0;
    }

    if (*c_rank) {
      const ValidatedSystem& sys = session.system(system_name);
      Rank r = classify_rank(sys);
      report["command"] = "rank";
      report["system"] = system_name;
      report["rank"] = to_string(r);
      ordered_json per_type = ordered_json::object();
      for (const Bundle& b : sys.system().bundles)
        for (const std::string& t : b.types)
          per_type[t] = sys.rank_of_type(t);
      report["type_ranks"] = per_type;
      report["exit_code"] = 0;
      emit(opts, report, to_string(r));
      return 0;
    }

    if (*c_eval) {
      session.principal_of(program_name);  // existence check
      SourcePtr src = source_from_expr(session, term_expr, cfg);
      FinitePrefix p = prefix(*src, depth);
      report["command"] = "eval";
      report["program"] = program_name;
      report["term"] = term_expr;
      report["depth"] = depth;
      report["prefix"] = to_string(p);
      report["exit_code"] = 0;
      emit(opts, report, to_string(p));
      return 0;
    }

    if (*c_type) {
      const ValidatedSystem& sys = session.system(system_name);
      SourcePtr src = source_from_expr(session, term_expr, cfg);
      MembershipVerdict v = check_type(sys, type_name, src, params);
      report["command"] = "type";
      report["system"] = system_name;
      report["type"] = type_name;
      report["term"] = term_expr;
      report["height"] = params.height;
      report["verdict"] = verdict_json(v);
      report["exit_code"] = verdict_exit(v);
      emit(opts, report, to_string(v));
      return verdict_exit(v);
    }

    if (*c_eq) {
      const ValidatedSystem& sys = session.system(system_name);
      params.height = depth;
      SourcePtr a = source_from_expr(session, left_expr, cfg);
      SourcePtr b = source_from_expr(session, right_expr, cfg);
      MembershipVerdict v = typed_eq(sys, type_name, a, b, params);
      report["command"] = "eq";
      report["system"] = system_name;
      report["type"] = type_name;
      report["left"] = left_expr;
      report["right"] = right_expr;
      report["depth"] = depth;
      report["verdict"] = verdict_json(v);
      report["exit_code"] = verdict_exit(v);
      emit(opts, report, to_string(v));
      return verdict_exit(v);
    }

    if (*c_claim) {
      const ValidatedSystem& sys = session.system(system_name);
      session.principal_of(program_name);  // existence check
      std::vector<SourcePtr> samples;
      std::vector<std::string> sample_exprs = read_sample_lines(samples_path);
      for (const std::string& e : sample_exprs)
        samples.push_back(source_from_expr(session, e, cfg));
      std::vector<SampleReport> reps = check_program_type(
          sys, session.program, fn_name, from_type, to_type, samples, params,
          cfg);
      report["command"] = "claim";
      report["fn"] = fn_name;
      report["from"] = from_type;
      report["to"] = to_type;
      ordered_json rows = ordered_json::array();
      int exit = 0;
      std::string human;
      for (std::size_t i = 0; i < reps.size(); ++i) {
        ordered_json row;
        row["sample"] = sample_exprs[i];
        row["input"] = verdict_json(reps[i].input_check);
        row["output"] = verdict_json(reps[i].output_check);
        rows.push_back(row);
        int e = verdict_exit(reps[i].output_check);
        if (e == 1 || (e == 2 && exit == 0)) exit = e;
        human += sample_exprs[i] + ": " + to_string(reps[i].output_check) +
                 "\n";
      }
      report["samples"] = rows;
      report["exit_code"] = exit;
      if (!human.empty()) human.pop_back();
      emit(opts, report, human);
      return exit;
    }

    if (*c_repr) {
      SourcePtr src = source_from_expr(session, term_expr, cfg);
      ConstructorCodeTable table(session.vocabulary);
      FuncRepr g = term_to_funcrepr(src, table);
      std::string dump = dump_funcrepr(g, table, depth);
      report["command"] = "repr";
      report["term"] = term_expr;
      report["depth"] = depth;
      report["entries"] =
          std::count(dump.begin(), dump.end(), '\n');
      if (!dump_path.empty()) {
        std::ofstream out(dump_path, std::ios::binary);
        if (!out)
          throw Error(ErrorCode::SyntaxError, "cannot write " + dump_path);
        out << dump;
        report["dump"] = dump_path;
        report["exit_code"] = 0;
        emit(opts, report,
             "wrote " + std::to_string(report["entries"].get<long>()) +
                 " entries to " + dump_path);
      } else {
        report["exit_code"] = 0;
        if (opts.json) {
          report["lines"] = dump;
          emit(opts, report, "");
        } else {
          std::cout << dump;
        }
      }
      return 0;
    }
  } catch (const Error& e) {
    ordered_json err;
    err["error"] = error_code_name(e.code());
    err["message"] = e.what();
    err["exit_code"] = 3;
    if (opts.json)
      std::cout << err.dump(2) << "\n";
    else
      std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what()
                << "\n";
    return 3;
  }
  return 3;
}
