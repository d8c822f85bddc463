#include <benchmark/benchmark.h>

#include <algorithm>

#include "hypell/arith.hpp"
#include "hypell/expcurve.hpp"
#include "hypell/hyperbola2.hpp"
#include "hypell/hyperbola3.hpp"
#include "hypell/pell.hpp"
#include "hypell/productset.hpp"

using namespace hypell;
using namespace hypell::expcurve;
using namespace hypell::hyperbola2;
using namespace hypell::hyperbola3;
using namespace hypell::pell;
using namespace hypell::productset;

namespace {

void bm_count2_brute(benchmark::State& state) {
    const i64 m = state.range(0);
    const auto inst = make_instance_2(1000003, 123456, 200000, 300000, m);
    for (auto _ : state) {
        auto r = count_brute_2(inst);
        benchmark::DoNotOptimize(r.count);
    }
}
BENCHMARK(bm_count2_brute)->Arg(31)->Arg(1000)->Arg(30000);

void bm_count2_fast(benchmark::State& state) {
    const i64 m = state.range(0);
    const auto inst = make_instance_2(1000003, 123456, 200000, 300000, m);
    for (auto _ : state) {
        auto r = enumerate_fast_2(inst);
        benchmark::DoNotOptimize(r.count);
    }
}
BENCHMARK(bm_count2_fast)->Arg(31)->Arg(1000);

void bm_count2_fast_narrow(benchmark::State& state) {
    // 256 M^4 < p: single-residue regime of the reduced equation
    const i64 p = 72057594037927931LL;
    const i64 m = state.range(0);
    const auto inst = make_instance_2(p, 31337, 11111111, 22222222, m);
    for (auto _ : state) {
        auto r = enumerate_fast_2(inst);
        benchmark::DoNotOptimize(r.z_width);
    }
}
BENCHMARK(bm_count2_fast_narrow)->Arg(128)->Arg(512);

void bm_count3_brute(benchmark::State& state) {
    const i64 m = state.range(0);
    const auto inst = make_instance_3(1000003, 77777, 4321, m);
    for (auto _ : state) {
        auto r = count_brute_3(inst);
        benchmark::DoNotOptimize(r.count);
    }
}
BENCHMARK(bm_count3_brute)->Arg(16)->Arg(64);

void bm_count3_product_form(benchmark::State& state) {
    // planted u = 7, v = 3 so the factorization route applies
    const i64 p = 1000000000039LL;
    const i64 l = floor_mod((i128)7 * inv_mod(3, p), p);
    const i64 lam = floor_mod((i128)2080 * inv_mod(27, p), p);
    const auto inst = make_instance_3(p, lam, l, state.range(0));
    const auto ctx = try_fast_context(inst);
    if (!ctx) {
        state.SkipWithError("context not found");
        return;
    }
    for (auto _ : state) {
        auto s = solve_product_form(*ctx);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(bm_count3_product_form)->Arg(6)->Arg(50);

void bm_pell_fundamental(benchmark::State& state) {
    const i64 a = state.range(0);
    for (auto _ : state) {
        auto f = fundamental_solution(a);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(bm_pell_fundamental)->Arg(61)->Arg(109)->Arg(181)->Arg(277)->Arg(9949);

void bm_factorize_semiprime(benchmark::State& state) {
    const i128 n = (i128)2147483647 * 2147483659LL;
    for (auto _ : state) {
        auto f = arith::factorize(n);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(bm_factorize_semiprime);

void bm_w_direct(benchmark::State& state) {
    const i64 p = 1009, len = state.range(0);
    const auto i1 = make_interval_fp(p, 1, len);
    const auto i2 = make_interval_fp(p, 101, len);
    const auto i3 = make_interval_fp(p, 501, len);
    for (auto _ : state) {
        auto w = count_W_direct(i1, i2, i3);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(bm_w_direct)->Arg(8)->Arg(32);

void bm_w_characters(benchmark::State& state) {
    const i64 p = 1009, len = state.range(0);
    const auto i1 = make_interval_fp(p, 1, len);
    const auto i2 = make_interval_fp(p, 101, len);
    const auto i3 = make_interval_fp(p, 501, len);
    const auto table = make_character_table(p);
    for (auto _ : state) {
        auto w = count_W_characters(i1, i2, i3, table);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(bm_w_characters)->Arg(8)->Arg(32);

void bm_expcurve_count(benchmark::State& state) {
    const i64 t = multiplicative_order(5, 1000003);
    const i64 m = std::min<i64>(state.range(0), t);
    const auto inst = make_expcurve(1000003, 5, 999, 0, 0, m);
    for (auto _ : state) {
        auto r = count_expcurve(inst);
        benchmark::DoNotOptimize(r.count);
    }
}
BENCHMARK(bm_expcurve_count)->Arg(100)->Arg(499);

}  // namespace

BENCHMARK_MAIN();
