#include "rspolar/codec.hpp"
#include "rspolar/construct.hpp"
#include "rspolar/kernel.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace rspolar;

namespace {

const RSKernel &g4()
{
	static const RSKernel k = build_rs_kernel(build_field(2));
	return k;
}

PdpwConfig pdpw() { return PdpwConfig{1.512, ZetaTable::gf4_default(), g4()}; }

std::vector<double> noisy_word(const CodeSpec &spec, double eb_n0_db, std::uint64_t seed)
{
	Rng rng(seed);
	std::vector<std::uint8_t> payload(spec.payload_bits());
	for (auto &b : payload)
		b = static_cast<std::uint8_t>(rng() & 1);
	const auto ch = AwgnChannel::from_ebn0(eb_n0_db, 0.5);
	const auto y = transmit(encode_codeword(crc_attach(payload, spec.crc()), spec), ch, rng);
	std::vector<double> probs(spec.length() * spec.q());
	word_posteriors(y, ch, spec.field(), probs);
	return probs;
}

} // namespace

static void BM_Encode(benchmark::State &state)
{
	const unsigned m = static_cast<unsigned>(state.range(0));
	std::vector<Symbol> s(std::size_t{1} << (2 * m));
	std::mt19937 rng(1);
	for (auto &x : s)
		x = rng() % 4;
	for (auto _ : state) {
		auto c = s;
		encode_inplace(c, g4());
		benchmark::DoNotOptimize(c.data());
	}
	state.SetItemsProcessed(state.iterations() * static_cast<long>(s.size()));
}
BENCHMARK(BM_Encode)->DenseRange(2, 6);

static void BM_ScDecode(benchmark::State &state)
{
	const unsigned m = static_cast<unsigned>(state.range(0));
	const auto seq = build_pdpw_sequence(pdpw(), m);
	const CodeSpec spec(g4(), m, select_info_set(seq, seq.length() / 2), CrcSpec{}, 1);
	const auto probs = noisy_word(spec, 2.0, 3);
	std::vector<std::uint8_t> mask(spec.length());
	for (std::uint32_t i = 0; i < spec.length(); ++i)
		mask[i] = spec.frozen(i);
	ScDecoder sc(g4(), m);
	for (auto _ : state)
		benchmark::DoNotOptimize(sc.decode(probs, mask));
}
BENCHMARK(BM_ScDecode)->DenseRange(2, 5)->Unit(benchmark::kMicrosecond);

static void BM_ListDecode(benchmark::State &state)
{
	const unsigned list = static_cast<unsigned>(state.range(0));
	const auto seq = build_pdpw_sequence(pdpw(), 4);
	const CodeSpec spec(g4(), 4, select_info_set(seq, 128), CrcSpec{}, list);
	const auto probs = noisy_word(spec, 2.0, 4);
	ListDecoder dec(spec);
	for (auto _ : state)
		benchmark::DoNotOptimize(dec.decode(probs));
}
BENCHMARK(BM_ListDecode)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

static void BM_PdpwSequence(benchmark::State &state)
{
	const unsigned m = static_cast<unsigned>(state.range(0));
	const auto cfg = pdpw();
	for (auto _ : state)
		benchmark::DoNotOptimize(build_pdpw_sequence(cfg, m));
	state.SetItemsProcessed(state.iterations() * (1l << (2 * m)));
}
BENCHMARK(BM_PdpwSequence)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

static void BM_McConstruct(benchmark::State &state)
{
	const auto ch = AwgnChannel::from_ebn0(2.0, 0.5);
	for (auto _ : state)
		benchmark::DoNotOptimize(mc_construct(g4(), 4, ch, McOptions{100, 1, 1}));
}
BENCHMARK(BM_McConstruct)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
