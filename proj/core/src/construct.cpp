#include "rspolar/construct.hpp"

#include "rspolar/codec.hpp"
#include "rspolar/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rspolar {

// ---------------------------------------------------------------- zeta

ZetaTable ZetaTable::gf4_default()
{
	ZetaTable z;
	z.values = {0.0, 2.0 - 2.0 / 1.55, 2.0 / (1.437 * std::log2(3.0)), 1.0};
	z.design_eb_n0_db = -1.8;
	return z;
}

bool ZetaTable::monotone() const { return std::is_sorted(values.begin(), values.end()); }

ZetaEstimate estimate_zeta(const RSKernel &kernel, const AwgnChannel &channel, const ZetaOptions &opt)
{
	const unsigned q = kernel.q();
	const unsigned t = kernel.field().t();
	const FieldSpec &f = kernel.field();
	if (!kernel.has_coset_leaders())
		throw ConfigError("estimate_zeta: needs q <= 8");
	if (opt.trials == 0)
		throw ConfigError("estimate_zeta: trials must be positive");

	constexpr std::size_t kChunk = 2048;
	const std::size_t chunks = (opt.trials + kChunk - 1) / kChunk;
	std::vector<std::vector<MutualInfoAccumulator>> real(chunks), genie(chunks);
	const KernelMarginalizer marg(kernel);

	detail::for_each_chunk(opt.trials, kChunk, opt.workers, [&](std::size_t c, std::size_t begin, std::size_t end) {
		real[c].assign(q, MutualInfoAccumulator(q));
		genie[c].assign(q, MutualInfoAccumulator(q));
		std::vector<Symbol> s(q), cw(q), base(q);
		std::vector<std::uint8_t> bits(q * t);
		std::vector<double> y(q * t), probs(q * q), out(q);
		std::uniform_int_distribution<unsigned> pick(0, q - 1);
		for (std::size_t trial = begin; trial < end; ++trial) {
			Rng rng(derive_seed(opt.seed, trial));
			for (auto &x : s)
				x = static_cast<Symbol>(pick(rng));
			kernel.apply(s, cw);
			bits = symbols_to_bits(cw, f);
			transmit(bits, channel, rng, y);
			word_posteriors(y, channel, f, probs);
			for (unsigned i = 0; i < q; ++i) {
				marg.marginal(probs, std::span(s).first(i), i, out);
				real[c][i].add(out);
				if (opt.mode == GenieMode::LastSubchannel)
					continue;
				// Genie knows everything but s_i; s_i enters only through g'_i.
				auto lead = kernel.coset_leader(i);
				for (unsigned j = 0; j < q; ++j)
					base[j] = cw[j] ^ f.mul(s[i], lead[j]);
				double total = 0.0;
				for (unsigned eta = 0; eta < q; ++eta) {
					double p = 1.0;
					for (unsigned j = 0; j < q; ++j)
						p *= probs[j * q + (base[j] ^ f.mul(static_cast<Symbol>(eta), lead[j]))];
					out[eta] = p;
					total += p;
				}
				if (!(total > 0.0))
					throw NumericError("estimate_zeta: genie posterior has zero mass");
				for (auto &p : out)
					p /= total;
				genie[c][i].add(out);
			}
		}
	});

	ZetaEstimate est;
	est.subchannel_mi.resize(q);
	est.genie_mi.resize(q);
	est.raw_ratio.resize(q);
	for (unsigned i = 0; i < q; ++i) {
		MutualInfoAccumulator r(q), g(q);
		for (std::size_t c = 0; c < chunks; ++c) {
			r.merge(real[c][i]);
			if (opt.mode == GenieMode::CosetLeader)
				g.merge(genie[c][i]);
		}
		est.subchannel_mi[i] = r.value();
		if (opt.mode == GenieMode::CosetLeader)
			est.genie_mi[i] = g.value();
	}
	if (opt.mode == GenieMode::LastSubchannel)
		std::fill(est.genie_mi.begin(), est.genie_mi.end(), est.subchannel_mi[q - 1]);

	est.table.values.resize(q);
	for (unsigned i = 0; i < q; ++i) {
		if (est.genie_mi[i] < 1e-12)
			throw NumericError("estimate_zeta: genie mutual information of index " + std::to_string(i) +
					   " is ~0 (channel too noisy for the design point)");
		est.raw_ratio[i] = est.subchannel_mi[i] / est.genie_mi[i];
		est.table.values[i] = std::clamp(est.raw_ratio[i], 0.0, 1.0);
	}
	est.table.values.front() = 0.0;
	est.table.values.back() = 1.0;
	est.table.design_eb_n0_db = channel.eb_n0_db;
	est.table.design_rate = channel.rate;
	est.table.n_samples = opt.trials;
	return est;
}

// ---------------------------------------------------------------- weights

void PdpwConfig::validate() const
{
	if (!(beta > 1.0))
		throw ConfigError("pdpw: beta must exceed 1, got " + std::to_string(beta));
	if (zeta.values.size() != kernel.q())
		throw ConfigError("pdpw: zeta needs " + std::to_string(kernel.q()) + " entries");
	for (double z : zeta.values)
		if (!(z >= 0.0 && z <= 1.0))
			throw ConfigError("pdpw: zeta entries must lie in [0, 1]");
}

namespace {

std::vector<double> digit_gains(const std::vector<double> &zeta, const RSKernel &kernel)
{
	const auto &d = kernel.partial_distances();
	std::vector<double> gain(kernel.q());
	for (unsigned v = 0; v < kernel.q(); ++v)
		gain[v] = zeta.at(v) * std::log2(static_cast<double>(d[v]));
	return gain;
}

double weight_with(std::uint32_t i, const std::vector<double> &gain, double beta, unsigned q, unsigned m)
{
	double w = 0.0, scale = 1.0;
	for (unsigned k = 0; k < m; ++k) {
		w += gain[i % q] * scale;
		i /= q;
		scale *= beta;
	}
	return w;
}

} // namespace

double pdpw_weight(std::uint32_t i, const PdpwConfig &config, unsigned m)
{
	const unsigned q = config.kernel.q();
	(void)QaryIndex(i, q, m); // range check
	return weight_with(i, digit_gains(config.zeta.values, config.kernel), config.beta, q, m);
}

// ---------------------------------------------------------------- beta

namespace {

double poly_eval(const std::vector<double> &c, double x)
{
	double acc = 0.0;
	for (auto k = c.size(); k-- > 0;)
		acc = acc * x + c[k];
	return acc;
}

std::vector<double> trimmed(std::vector<double> c)
{
	while (!c.empty() && c.back() == 0.0)
		c.pop_back();
	return c;
}

// Real roots of c in (a, b), via the critical points of c.
std::vector<double> roots_in(const std::vector<double> &coeffs, double a, double b)
{
	const auto c = trimmed(coeffs);
	std::vector<double> roots;
	if (c.size() <= 1)
		return roots;
	if (c.size() == 2) {
		const double r = -c[0] / c[1];
		if (r > a && r < b)
			roots.push_back(r);
		return roots;
	}
	std::vector<double> deriv(c.size() - 1);
	for (std::size_t k = 1; k < c.size(); ++k)
		deriv[k - 1] = c[k] * static_cast<double>(k);
	std::vector<double> pts{a};
	for (double r : roots_in(deriv, a, b))
		pts.push_back(r);
	pts.push_back(b);
	for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
		double lo = pts[s], hi = pts[s + 1];
		double flo = poly_eval(c, lo), fhi = poly_eval(c, hi);
		if (s > 0 && flo == 0.0) {
			if (roots.empty() || roots.back() != lo)
				roots.push_back(lo);
			continue;
		}
		if ((flo < 0.0) == (fhi < 0.0) || fhi == 0.0)
			continue;
		for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
			const double mid = 0.5 * (lo + hi);
			const double fm = poly_eval(c, mid);
			if ((fm < 0.0) == (flo < 0.0)) {
				lo = mid;
				flo = fm;
			} else {
				hi = mid;
			}
		}
		roots.push_back(0.5 * (lo + hi));
	}
	return roots;
}

std::vector<BetaInterval> positive_set(const std::vector<double> &coeffs)
{
	const auto c = trimmed(coeffs);
	std::vector<BetaInterval> out;
	if (c.empty())
		return out;
	double bound = 1.0;
	for (std::size_t k = 0; k + 1 < c.size(); ++k)
		bound = std::max(bound, 1.0 + std::abs(c[k] / c.back()));
	std::vector<double> cuts{1.0};
	for (double r : roots_in(c, 1.0, bound + 1.0))
		cuts.push_back(r);
	const double inf = std::numeric_limits<double>::infinity();
	cuts.push_back(inf);
	for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
		const double lo = cuts[s], hi = cuts[s + 1];
		const double probe = std::isinf(hi) ? lo + 1.0 : 0.5 * (lo + hi);
		if (poly_eval(c, probe) > 0.0) {
			if (!out.empty() && out.back().upper == lo)
				out.back().upper = hi;
			else
				out.push_back({lo, hi});
		}
	}
	return out;
}

unsigned stages_to_hold(std::uint32_t a, std::uint32_t b, unsigned q)
{
	unsigned m = 1;
	std::uint64_t n = q;
	while (n <= std::max(a, b)) {
		n *= q;
		++m;
	}
	return m;
}

std::vector<double> difference_coeffs(std::uint32_t i, std::uint32_t j, const std::vector<double> &gain, unsigned q,
				      unsigned m)
{
	std::vector<double> c(m);
	for (unsigned k = 0; k < m; ++k) {
		c[k] = gain[i % q] - gain[j % q];
		i /= q;
		j /= q;
	}
	return c;
}

bool inside(const std::vector<BetaInterval> &set, double beta)
{
	return std::any_of(set.begin(), set.end(), [&](const BetaInterval &iv) { return iv.contains(beta); });
}

double choose_beta(const BetaInterval &iv) { return iv.bounded() ? 0.5 * (iv.lower + iv.upper) : iv.lower + 0.5; }

} // namespace

std::vector<BetaInterval> beta_threshold(std::uint32_t i, std::uint32_t j, const std::vector<double> &zeta,
					 const RSKernel &kernel, unsigned m)
{
	const unsigned q = kernel.q();
	const PartialOrder order(q, m);
	if (order.comparable(i, j))
		throw ConfigError("beta_threshold: indices " + std::to_string(i) + " and " + std::to_string(j) +
				  " are ordered for every beta");
	return positive_set(difference_coeffs(i, j, digit_gains(zeta, kernel), q, m));
}

BetaFit fit_beta(const std::vector<double> &zeta, const RSKernel &kernel, const std::vector<PairDirection> &directions)
{
	const unsigned q = kernel.q();
	const auto gain = digit_gains(zeta, kernel);
	std::vector<std::vector<BetaInterval>> allowed;
	std::vector<double> cuts{1.0};
	for (const auto &d : directions) {
		const unsigned m = stages_to_hold(d.better, d.worse, q);
		allowed.push_back(positive_set(difference_coeffs(d.better, d.worse, gain, q, m)));
		for (const auto &iv : allowed.back()) {
			cuts.push_back(iv.lower);
			if (iv.bounded())
				cuts.push_back(iv.upper);
		}
	}
	std::sort(cuts.begin(), cuts.end());
	cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
	cuts.push_back(std::numeric_limits<double>::infinity());

	// Elementary segments, merged while the satisfied count stays at its maximum.
	struct Segment {
		BetaInterval iv;
		std::size_t count;
	};
	std::vector<Segment> segs;
	for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
		const BetaInterval iv{cuts[s], cuts[s + 1]};
		const double probe = choose_beta(iv);
		std::size_t count = 0;
		for (const auto &a : allowed)
			count += inside(a, probe);
		if (!segs.empty() && segs.back().count == count && segs.back().iv.upper == iv.lower)
			segs.back().iv.upper = iv.upper;
		else
			segs.push_back({iv, count});
	}
	std::size_t best_count = 0;
	for (const auto &s : segs)
		best_count = std::max(best_count, s.count);
	const Segment *best = nullptr;
	for (const auto &s : segs)
		if (s.count == best_count && (!best || s.iv.width() > best->iv.width()))
			best = &s;

	BetaFit fit;
	fit.interval = best->iv;
	fit.chosen = choose_beta(fit.interval);
	fit.consistent = best_count == directions.size();
	for (std::size_t k = 0; k < directions.size(); ++k)
		if (!inside(allowed[k], fit.chosen))
			fit.conflicts.push_back(directions[k]);
	return fit;
}

// ---------------------------------------------------------------- Monte-Carlo

double GenieStats::error_rate(std::uint32_t i) const
{
	return trials ? static_cast<double>(errors.at(i)) / static_cast<double>(trials) : 0.0;
}

GenieStats mc_construct(const RSKernel &kernel, unsigned m, const AwgnChannel &channel, const McOptions &opt)
{
	const unsigned q = kernel.q();
	const FieldSpec &f = kernel.field();
	std::size_t n = 1;
	for (unsigned k = 0; k < m; ++k)
		n *= q;

	constexpr std::size_t kChunk = 256;
	const std::size_t chunks = (opt.trials + kChunk - 1) / kChunk;
	std::vector<std::vector<std::size_t>> errs(chunks);
	detail::for_each_chunk(opt.trials, kChunk, opt.workers, [&](std::size_t c, std::size_t begin, std::size_t end) {
		ScDecoder dec(kernel, m);
		errs[c].assign(n, 0);
		std::vector<Symbol> s(n);
		std::vector<double> y(n * f.t()), probs(n * q);
		std::vector<std::uint8_t> wrong(n);
		std::uniform_int_distribution<unsigned> pick(0, q - 1);
		for (std::size_t trial = begin; trial < end; ++trial) {
			Rng rng(derive_seed(opt.seed, trial));
			for (auto &x : s)
				x = static_cast<Symbol>(pick(rng));
			const auto bits = symbols_to_bits(encode(s, kernel), f);
			transmit(bits, channel, rng, y);
			word_posteriors(y, channel, f, probs);
			dec.decode_genie(probs, s, wrong);
			for (std::size_t i = 0; i < n; ++i)
				errs[c][i] += wrong[i];
		}
	});
	GenieStats stats;
	stats.trials = opt.trials;
	stats.errors.assign(n, 0);
	for (const auto &e : errs)
		for (std::size_t i = 0; i < n; ++i)
			stats.errors[i] += e[i];
	return stats;
}

std::vector<PairDirection> resolve_directions(const GenieStats &stats, const PartialOrder &order, double min_z)
{
	if (stats.errors.size() != order.size())
		throw ConfigError("resolve_directions: statistics and partial order sizes differ");
	std::vector<PairDirection> out;
	const double t = static_cast<double>(stats.trials);
	for (std::uint32_t i = 0; i < order.size(); ++i) {
		for (std::uint32_t j = i + 1; j < order.size(); ++j) {
			if (order.comparable(i, j))
				continue;
			const double ei = stats.error_rate(i), ej = stats.error_rate(j);
			const double se = std::sqrt((ei * (1 - ei) + ej * (1 - ej)) / t);
			if (se == 0.0 || std::abs(ei - ej) < min_z * se)
				continue;
			out.push_back(ei < ej ? PairDirection{i, j} : PairDirection{j, i});
		}
	}
	return out;
}

BetaFit fit_beta_mc(const std::vector<double> &zeta, const RSKernel &kernel, unsigned m_max,
		    const AwgnChannel &channel, const McOptions &opt, double min_z)
{
	if (m_max < 2)
		throw ConfigError("fit_beta: m_max must be at least 2");
	std::vector<PairDirection> dirs;
	for (unsigned m = 2; m <= m_max; ++m) {
		McOptions o = opt;
		o.seed = derive_seed(opt.seed, m);
		const auto stats = mc_construct(kernel, m, channel, o);
		const auto d = resolve_directions(stats, PartialOrder(kernel.q(), m), min_z);
		dirs.insert(dirs.end(), d.begin(), d.end());
	}
	return fit_beta(zeta, kernel, dirs);
}

// ---------------------------------------------------------------- sequences

std::string to_string(Method m) { return m == Method::Pdpw ? "pdpw" : "mc"; }

Method method_from_string(const std::string &s)
{
	if (s == "pdpw")
		return Method::Pdpw;
	if (s == "mc")
		return Method::MonteCarlo;
	throw ConfigError("unknown construction method '" + s + "' (expected pdpw or mc)");
}

std::vector<std::uint32_t> order_by_weight(const std::vector<double> &weights)
{
	std::vector<std::uint32_t> order(weights.size());
	std::iota(order.begin(), order.end(), 0u);
	std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
		if (weights[a] != weights[b])
			return weights[a] > weights[b];
		return a > b;
	});
	return order;
}

ReliabilitySequence build_pdpw_sequence(const PdpwConfig &config, unsigned m)
{
	config.validate();
	const unsigned q = config.kernel.q();
	ReliabilitySequence seq;
	seq.q = q;
	seq.m = m;
	seq.method = Method::Pdpw;
	seq.beta = config.beta;
	seq.zeta = config.zeta.values;
	seq.design_eb_n0_db = config.zeta.design_eb_n0_db;
	const auto gain = digit_gains(config.zeta.values, config.kernel);
	std::size_t n = 1;
	for (unsigned k = 0; k < m; ++k)
		n *= q;
	seq.weights.resize(n);
	for (std::uint32_t i = 0; i < n; ++i)
		seq.weights[i] = weight_with(i, gain, config.beta, q, m);
	seq.order = order_by_weight(seq.weights);
	return seq;
}

ReliabilitySequence build_mc_sequence(const GenieStats &stats, unsigned q, unsigned m,
				      std::optional<double> design_eb_n0_db, std::optional<std::uint64_t> seed)
{
	std::size_t n = 1;
	for (unsigned k = 0; k < m; ++k)
		n *= q;
	if (stats.errors.size() != n)
		throw ConfigError("build_sequence: statistics cover " + std::to_string(stats.errors.size()) +
				  " indices, code has " + std::to_string(n));
	ReliabilitySequence seq;
	seq.q = q;
	seq.m = m;
	seq.method = Method::MonteCarlo;
	seq.design_eb_n0_db = design_eb_n0_db;
	seq.seed = seed;
	seq.weights.resize(n);
	for (std::uint32_t i = 0; i < n; ++i)
		seq.weights[i] = -stats.error_rate(i);
	seq.order = order_by_weight(seq.weights);
	return seq;
}

std::vector<std::uint32_t> select_info_set(const ReliabilitySequence &seq, std::size_t k)
{
	if (k == 0 || k > seq.order.size())
		throw ConfigError("select_info_set: K = " + std::to_string(k) + " outside (0, " +
				  std::to_string(seq.order.size()) + "]");
	return {seq.order.begin(), seq.order.begin() + static_cast<std::ptrdiff_t>(k)};
}

} // namespace rspolar
