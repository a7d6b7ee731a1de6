#include "rspolar/codec.hpp"

#include "rspolar/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

namespace rspolar {

// ---------------------------------------------------------------- CRC

std::uint32_t crc_remainder(std::span<const std::uint8_t> bits, const CrcSpec &crc)
{
	if (crc.width == 0)
		return 0;
	if (crc.width > 32)
		throw ConfigError("crc: width above 32");
	const std::uint32_t mask = crc.width == 32 ? 0xffffffffu : ((1u << crc.width) - 1);
	std::uint32_t reg = 0;
	for (auto b : bits) {
		const std::uint32_t top = ((reg >> (crc.width - 1)) & 1u) ^ (b & 1u);
		reg = (reg << 1) & mask;
		if (top)
			reg ^= crc.poly & mask;
	}
	return reg;
}

std::vector<std::uint8_t> crc_attach(std::span<const std::uint8_t> bits, const CrcSpec &crc)
{
	std::vector<std::uint8_t> out(bits.begin(), bits.end());
	const auto reg = crc_remainder(bits, crc);
	for (unsigned k = crc.width; k-- > 0;)
		out.push_back((reg >> k) & 1u);
	return out;
}

bool crc_check(std::span<const std::uint8_t> bits, const CrcSpec &crc)
{
	if (bits.size() < crc.width)
		return false;
	return crc_remainder(bits, crc) == 0;
}

// ---------------------------------------------------------------- CodeSpec

CodeSpec::CodeSpec(RSKernel kernel, unsigned m, std::vector<std::uint32_t> info_set, CrcSpec crc,
		   unsigned list_size)
	: kernel_(std::move(kernel)), m_(m), info_(std::move(info_set)), crc_(crc), list_size_(list_size)
{
	if (m == 0)
		throw ConfigError("code: m must be positive");
	n_ = 1;
	for (unsigned k = 0; k < m; ++k)
		n_ *= kernel_.q();
	if (list_size_ == 0)
		throw ConfigError("code: list size must be positive");
	std::sort(info_.begin(), info_.end());
	if (std::adjacent_find(info_.begin(), info_.end()) != info_.end())
		throw ConfigError("code: duplicate information index");
	if (!info_.empty() && info_.back() >= n_)
		throw ConfigError("code: information index out of range");
	if (info_bits() < crc_.width)
		throw ConfigError("code: " + std::to_string(info_bits()) + " information bits cannot hold a " +
				  std::to_string(crc_.width) + "-bit CRC");
	frozen_.assign(n_, 1);
	for (auto i : info_)
		frozen_[i] = 0;
}

std::vector<std::uint32_t> CodeSpec::frozen_set() const
{
	std::vector<std::uint32_t> f;
	for (std::uint32_t i = 0; i < n_; ++i)
		if (frozen_[i])
			f.push_back(i);
	return f;
}

std::vector<Symbol> place_info(std::span<const std::uint8_t> info_bits, const CodeSpec &spec)
{
	if (info_bits.size() != spec.info_bits())
		throw DomainError("encode: expected " + std::to_string(spec.info_bits()) + " information bits, got " +
				  std::to_string(info_bits.size()));
	const unsigned t = spec.t();
	std::vector<Symbol> s(spec.length(), 0);
	const auto &info = spec.info_set();
	for (std::size_t k = 0; k < info.size(); ++k)
		s[info[k]] = spec.field().bits_to_symbol(info_bits.subspan(k * t, t));
	return s;
}

std::vector<std::uint8_t> extract_info(std::span<const Symbol> symbols, const CodeSpec &spec)
{
	const unsigned t = spec.t();
	std::vector<std::uint8_t> bits(spec.info_bits());
	const auto &info = spec.info_set();
	for (std::size_t k = 0; k < info.size(); ++k)
		spec.field().symbol_to_bits(symbols[info[k]], std::span(bits).subspan(k * t, t));
	return bits;
}

std::vector<std::uint8_t> symbols_to_bits(std::span<const Symbol> symbols, const FieldSpec &field)
{
	const unsigned t = field.t();
	std::vector<std::uint8_t> bits(symbols.size() * t);
	for (std::size_t j = 0; j < symbols.size(); ++j)
		field.symbol_to_bits(symbols[j], std::span(bits).subspan(j * t, t));
	return bits;
}

std::vector<std::uint8_t> encode_codeword(std::span<const std::uint8_t> info_bits, const CodeSpec &spec)
{
	auto s = place_info(info_bits, spec);
	encode_inplace(s, spec.kernel());
	return symbols_to_bits(s, spec.field());
}

// ---------------------------------------------------------------- kernel marginal

KernelMarginalizer::KernelMarginalizer(const RSKernel &kernel) : kernel_(kernel)
{
	const unsigned q = kernel.q();
	if (q > 8)
		throw ConfigError("decoder: exact kernel marginalisation limited to q <= 8");
	const FieldSpec &f = kernel.field();
	tails_.resize(q);
	for (unsigned i = 0; i < q; ++i) {
		const unsigned free = q - i; // s_i..s_{q-1}
		std::size_t combos = 1;
		for (unsigned k = 0; k < free; ++k)
			combos *= q;
		auto &tab = tails_[i];
		tab.assign(combos * q, 0);
		for (std::size_t c = 0; c < combos; ++c) {
			// s_i is the most significant base-q digit of c.
			std::size_t rest = c;
			for (unsigned b = q; b-- > i;) {
				const auto s = static_cast<Symbol>(rest % q);
				rest /= q;
				if (!s)
					continue;
				auto g = kernel.row(b);
				for (unsigned j = 0; j < q; ++j)
					tab[c * q + j] ^= f.mul(s, g[j]);
			}
		}
	}
}

bool KernelMarginalizer::marginal(std::span<const double> in, std::span<const Symbol> prefix, unsigned i,
				  std::span<double> out) const
{
	const unsigned q = kernel_.q();
	const FieldSpec &f = kernel_.field();
	std::array<Symbol, 8> base{};
	for (unsigned b = 0; b < i; ++b) {
		const Symbol s = prefix[b];
		if (!s)
			continue;
		auto g = kernel_.row(b);
		for (unsigned j = 0; j < q; ++j)
			base[j] ^= f.mul(s, g[j]);
	}
	std::array<double, 64> perm;
	for (unsigned j = 0; j < q; ++j)
		for (unsigned x = 0; x < q; ++x)
			perm[j * q + x] = in[j * q + (x ^ base[j])];

	std::fill(out.begin(), out.begin() + q, 0.0);
	const auto &tab = tails_[i];
	const std::size_t combos = tab.size() / q;
	const std::size_t per_symbol = combos / q;
	const Symbol *cw = tab.data();
	for (unsigned eta = 0; eta < q; ++eta) {
		double acc = 0.0;
		for (std::size_t c = 0; c < per_symbol; ++c, cw += q) {
			double term = perm[cw[0]];
			for (unsigned j = 1; j < q; ++j)
				term *= perm[j * q + cw[j]];
			acc += term;
		}
		out[eta] = acc;
	}
	double total = 0.0;
	for (unsigned eta = 0; eta < q; ++eta)
		total += out[eta];
	if (!(total > 0.0) || !std::isfinite(total)) {
		std::fill(out.begin(), out.begin() + q, 1.0 / q);
		return false;
	}
	for (unsigned eta = 0; eta < q; ++eta)
		out[eta] /= total;
	return true;
}

SymbolPosterior kernel_marginal(std::span<const SymbolPosterior> posteriors, std::span<const Symbol> decided,
				unsigned i, const RSKernel &kernel)
{
	const unsigned q = kernel.q();
	if (posteriors.size() != q || i >= q || decided.size() != i)
		throw DomainError("kernel_marginal: need q posteriors, i < q and i decided symbols");
	std::vector<double> in(q * q);
	for (unsigned j = 0; j < q; ++j) {
		if (posteriors[j].probs.size() != q)
			throw DomainError("kernel_marginal: posterior size mismatch");
		std::copy(posteriors[j].probs.begin(), posteriors[j].probs.end(), in.begin() + j * q);
	}
	SymbolPosterior out{std::vector<double>(q)};
	if (!KernelMarginalizer(kernel).marginal(in, decided.first(i), i, out.probs))
		throw NumericError("kernel_marginal: zero total probability mass");
	return out;
}

std::vector<double> flatten(std::span<const SymbolPosterior> posteriors)
{
	std::vector<double> flat;
	for (const auto &p : posteriors)
		flat.insert(flat.end(), p.probs.begin(), p.probs.end());
	return flat;
}

// ---------------------------------------------------------------- SC engine

namespace {

constexpr double kProbFloor = 1e-300;

// Buffer layout of one decoding path. Level r (0 <= r <= m) works on blocks
// of q^r symbols; P[r] holds the posteriors of the current level-r block
// (P[m] is the channel and lives outside), C[r] holds the re-encoded
// children of the current level-r block.
struct Layout {
	unsigned q = 0, m = 0;
	std::size_t n = 0;
	std::vector<std::size_t> pow;  // q^r
	std::vector<std::size_t> poff; // offset of P[r] in doubles, r < m
	std::vector<std::size_t> coff; // offset of C[r] in symbols, 1 <= r <= m
	std::size_t psize = 0, csize = 0;

	Layout(unsigned q_, unsigned m_) : q(q_), m(m_)
	{
		pow.resize(m + 1);
		pow[0] = 1;
		for (unsigned r = 1; r <= m; ++r)
			pow[r] = pow[r - 1] * q;
		n = pow[m];
		poff.resize(m + 1);
		for (unsigned r = 0; r < m; ++r) {
			poff[r] = psize;
			psize += pow[r] * q;
		}
		coff.resize(m + 1);
		for (unsigned r = 1; r <= m; ++r) {
			coff[r] = csize;
			csize += pow[r];
		}
	}

	unsigned digit(std::size_t i, unsigned k) const { return static_cast<unsigned>((i / pow[k]) % q); }

	unsigned start_level(std::size_t i) const
	{
		if (i == 0)
			return m;
		unsigned h = 0;
		while (i % q == 0) {
			i /= q;
			++h;
		}
		return h + 1;
	}
};

struct Path {
	std::vector<double> p;
	std::vector<Symbol> c;
	std::vector<Symbol> u;
	double metric = 0.0;

	explicit Path(const Layout &L) : p(L.psize), c(L.csize), u(L.n) {}
	std::span<const double> leaf_probs(const Layout &L) const { return {p.data() + L.poff[0], L.q}; }
};

void descend(Path &path, const Layout &L, const KernelMarginalizer &marg, std::span<const double> channel,
	     std::size_t i)
{
	const unsigned q = L.q;
	std::array<double, 64> in;
	std::array<Symbol, 8> prefix;
	for (unsigned r = L.start_level(i); r >= 1; --r) {
		const double *src = r == L.m ? channel.data() : path.p.data() + L.poff[r];
		double *dst = path.p.data() + L.poff[r - 1];
		const Symbol *kids = path.c.data() + L.coff[r];
		const std::size_t half = L.pow[r - 1];
		const unsigned a = L.digit(i, r - 1);
		for (std::size_t pos = 0; pos < half; ++pos) {
			for (unsigned j = 0; j < q; ++j) {
				const double *s = src + (j * half + pos) * q;
				std::copy(s, s + q, in.begin() + j * q);
			}
			for (unsigned b = 0; b < a; ++b)
				prefix[b] = kids[b * half + pos];
			marg.marginal(std::span(in.data(), q * q), std::span(prefix.data(), a), a,
				      std::span(dst + pos * q, q));
		}
	}
}

void commit(Path &path, const Layout &L, const RSKernel &kernel, std::size_t i, Symbol u)
{
	const unsigned q = L.q;
	path.u[i] = u;
	path.c[L.coff[1] + L.digit(i, 0)] = u;
	std::array<Symbol, 8> v, x;
	for (unsigned r = 1; r < L.m && L.digit(i, r - 1) == q - 1; ++r) {
		const std::size_t half = L.pow[r - 1];
		const Symbol *kids = path.c.data() + L.coff[r];
		Symbol *dst = path.c.data() + L.coff[r + 1] + L.digit(i, r) * L.pow[r];
		for (std::size_t pos = 0; pos < half; ++pos) {
			for (unsigned a = 0; a < q; ++a)
				v[a] = kids[a * half + pos];
			kernel.apply(std::span(v.data(), q), std::span(x.data(), q));
			for (unsigned b = 0; b < q; ++b)
				dst[b * half + pos] = x[b];
		}
	}
}

unsigned argmax(std::span<const double> p)
{
	return static_cast<unsigned>(std::max_element(p.begin(), p.end()) - p.begin());
}

void check_leaf(std::span<const double> leaf, const Layout &L)
{
	if (leaf.size() != L.n * L.q)
		throw DomainError("decoder: expected " + std::to_string(L.n * L.q) + " leaf probabilities, got " +
				  std::to_string(leaf.size()));
}

} // namespace

ScDecoder::ScDecoder(const RSKernel &kernel, unsigned m) : marg_(kernel), m_(m)
{
	n_ = Layout(kernel.q(), m).n;
}

std::vector<Symbol> ScDecoder::decode(std::span<const double> leaf, std::span<const std::uint8_t> frozen_mask)
{
	const Layout L(marg_.kernel().q(), m_);
	check_leaf(leaf, L);
	Path path(L);
	for (std::size_t i = 0; i < L.n; ++i) {
		descend(path, L, marg_, leaf, i);
		const Symbol u = frozen_mask[i] ? Symbol{0} : static_cast<Symbol>(argmax(path.leaf_probs(L)));
		commit(path, L, marg_.kernel(), i, u);
	}
	return path.u;
}

void ScDecoder::decode_genie(std::span<const double> leaf, std::span<const Symbol> truth,
			     std::span<std::uint8_t> wrong)
{
	const Layout L(marg_.kernel().q(), m_);
	check_leaf(leaf, L);
	Path path(L);
	for (std::size_t i = 0; i < L.n; ++i) {
		descend(path, L, marg_, leaf, i);
		wrong[i] = argmax(path.leaf_probs(L)) != truth[i];
		commit(path, L, marg_.kernel(), i, truth[i]);
	}
}

ListDecoder::ListDecoder(const CodeSpec &spec) : spec_(spec), marg_(spec.kernel()) {}

DecodeResult ListDecoder::decode(std::span<const double> leaf) { return decode(leaf, spec_.list_size()); }

DecodeResult ListDecoder::decode(std::span<const double> leaf, unsigned list_size)
{
	if (list_size == 0)
		throw ConfigError("decoder: list size must be positive");
	const Layout L(spec_.q(), spec_.m());
	check_leaf(leaf, L);
	const unsigned q = L.q;

	std::vector<Path> paths;
	paths.emplace_back(L);
	struct Candidate {
		double metric;
		unsigned parent;
		Symbol sym;
	};
	std::vector<Candidate> cand;
	std::vector<Path> next;

	for (std::size_t i = 0; i < L.n; ++i) {
		for (auto &path : paths)
			descend(path, L, marg_, leaf, i);
		if (spec_.frozen(static_cast<std::uint32_t>(i))) {
			for (auto &path : paths) {
				path.metric += std::log(std::max(path.leaf_probs(L)[0], kProbFloor));
				commit(path, L, spec_.kernel(), i, 0);
			}
			continue;
		}
		cand.clear();
		for (unsigned k = 0; k < paths.size(); ++k) {
			auto probs = paths[k].leaf_probs(L);
			for (unsigned s = 0; s < q; ++s)
				cand.push_back({paths[k].metric + std::log(std::max(probs[s], kProbFloor)), k,
						static_cast<Symbol>(s)});
		}
		// Candidates are generated in (parent, symbol) order; a stable sort keeps that as the tie-break.
		const std::size_t keep = std::min<std::size_t>(list_size, cand.size());
		std::stable_sort(cand.begin(), cand.end(),
				 [](const Candidate &a, const Candidate &b) { return a.metric > b.metric; });
		next.clear();
		for (std::size_t k = 0; k < keep; ++k) {
			next.push_back(paths[cand[k].parent]);
			next.back().metric = cand[k].metric;
			commit(next.back(), L, spec_.kernel(), i, cand[k].sym);
		}
		paths.swap(next);
	}

	std::vector<unsigned> rank(paths.size());
	std::iota(rank.begin(), rank.end(), 0u);
	std::stable_sort(rank.begin(), rank.end(),
			 [&](unsigned a, unsigned b) { return paths[a].metric > paths[b].metric; });
	DecodeResult best;
	for (std::size_t k = 0; k < rank.size(); ++k) {
		const Path &p = paths[rank[k]];
		auto bits = extract_info(p.u, spec_);
		const bool ok = crc_check(bits, spec_.crc());
		if (ok || k == 0) {
			best.symbols = p.u;
			best.info_bits = std::move(bits);
			best.crc_ok = ok;
			best.metric = p.metric;
		}
		if (ok)
			break;
	}
	return best;
}

std::vector<Symbol> sc_decode(std::span<const SymbolPosterior> leaf, const CodeSpec &spec)
{
	std::vector<std::uint8_t> mask(spec.length());
	for (std::uint32_t i = 0; i < spec.length(); ++i)
		mask[i] = spec.frozen(i);
	ScDecoder dec(spec.kernel(), spec.m());
	return dec.decode(flatten(leaf), mask);
}

DecodeResult ca_scl_decode(std::span<const SymbolPosterior> leaf, const CodeSpec &spec)
{
	ListDecoder dec(spec);
	return dec.decode(flatten(leaf));
}

} // namespace rspolar
