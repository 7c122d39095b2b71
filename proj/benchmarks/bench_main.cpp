#include <benchmark/benchmark.h>

#include "cotype/arith.hpp"
#include "cotype/evaluator.hpp"
#include "cotype/typecheck.hpp"

using namespace cotype;

namespace {

Vocabulary word_vocab() { return Vocabulary({{"e", 0}, {"0", 1}, {"1", 1}}); }

CertifiedProgram omega_program() {
  Program p;
  p.vocabulary = Vocabulary({{"0", 0}, {"s", 1}});
  FunctionId i{"i", 0};
  p.principal = i;
  p.equations = {{i, {}, make_ctor({"s", 1}, {make_fun("i", 0, {})})}};
  return check_wellformed(p);
}

SourcePtr cyclic01() {
  return stream_source([](std::size_t n) -> Constructor {
    return {n % 2 == 0 ? "0" : "1", 1};
  });
}

ValidatedSystem womega() {
  Bundle b;
  b.polarity = Polarity::Coinductive;
  b.types = {"W"};
  b.coinductive_rules["W"] = {{{"0", 1}, {"W"}}, {{"1", 1}, {"W"}}};
  return validate({"WOmega", word_vocab(), {b}});
}

void BM_eval_spine(benchmark::State& state) {
  CertifiedProgram p = omega_program();
  TermPtr i = make_fun("i", 0, {});
  EvalConfig cfg;
  cfg.max_depth = static_cast<std::size_t>(state.range(0)) + 8;
  Address a(std::vector<std::size_t>(state.range(0), 0));
  for (auto _ : state) {
    ConstructorQuery q = eval_at(p, {}, i, a, cfg);
    benchmark::DoNotOptimize(q);
  }
}
BENCHMARK(BM_eval_spine)->Arg(16)->Arg(64)->Arg(256);

void BM_check_coinductive(benchmark::State& state) {
  ValidatedSystem w = womega();
  SourcePtr src = cyclic01();
  CheckParams params;
  params.height = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    MembershipVerdict v = check_coinductive(w, "W", src, params);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_check_coinductive)->Arg(16)->Arg(64)->Arg(128);

void BM_typed_eq(benchmark::State& state) {
  ValidatedSystem w = womega();
  CheckParams params;
  params.height = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    MembershipVerdict v = typed_eq(w, "W", cyclic01(), cyclic01(), params);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_typed_eq)->Arg(16)->Arg(32);

void BM_address_roundtrip(benchmark::State& state) {
  std::vector<Address> addrs;
  for (std::size_t len = 0; len <= 8; ++len)
    addrs.push_back(
        Address(std::vector<std::size_t>(len, len % 3)));
  for (auto _ : state) {
    for (const Address& a : addrs) {
      Address back = decode_address(encode_address(a));
      benchmark::DoNotOptimize(back);
    }
  }
}
BENCHMARK(BM_address_roundtrip);

}  // namespace

BENCHMARK_MAIN();
