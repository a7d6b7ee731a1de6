// rspolar command-line front end.
#include "rspolar/codec.hpp"
#include "rspolar/construct.hpp"
#include "rspolar/error.hpp"
#include "rspolar/harness.hpp"
#include "rspolar/porder.hpp"
#include "rspolar/ratematch.hpp"

#include <CLI11.hpp>

#include <bit>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace rspolar;

namespace {

// Hex strings carry bits MSB-first; the final digit is zero-padded.
std::vector<std::uint8_t> bits_from_hex(const std::string &hex, std::size_t n_bits)
{
	if (hex.size() != (n_bits + 3) / 4)
		throw ConfigError("expected " + std::to_string((n_bits + 3) / 4) + " hex digits for " +
				  std::to_string(n_bits) + " bits, got " + std::to_string(hex.size()));
	std::vector<std::uint8_t> bits;
	for (char ch : hex) {
		int v;
		if (ch >= '0' && ch <= '9')
			v = ch - '0';
		else if (ch >= 'a' && ch <= 'f')
			v = ch - 'a' + 10;
		else if (ch >= 'A' && ch <= 'F')
			v = ch - 'A' + 10;
		else
			throw ConfigError(std::string("bad hex digit '") + ch + "'");
		for (int b = 3; b >= 0; --b)
			bits.push_back((v >> b) & 1);
	}
	for (std::size_t k = n_bits; k < bits.size(); ++k)
		if (bits[k])
			throw ConfigError("hex padding bits must be zero");
	bits.resize(n_bits);
	return bits;
}

std::string hex_from_bits(std::span<const std::uint8_t> bits)
{
	static const char *digits = "0123456789abcdef";
	std::string out;
	for (std::size_t k = 0; k < bits.size(); k += 4) {
		int v = 0;
		for (std::size_t b = 0; b < 4; ++b)
			v = (v << 1) | (k + b < bits.size() ? bits[k + b] : 0);
		out.push_back(digits[v]);
	}
	return out;
}

std::vector<double> parse_list(const std::string &s)
{
	std::vector<double> out;
	std::stringstream ss(s);
	for (std::string item; std::getline(ss, item, ',');)
		out.push_back(std::stod(item));
	return out;
}

unsigned log2_of(unsigned q)
{
	if (!std::has_single_bit(q) || q < 2)
		throw ConfigError("q must be a power of two");
	return static_cast<unsigned>(std::countr_zero(q));
}

struct CodeArgs {
	std::string seq;
	std::size_t k_bits = 0;
	unsigned crc_width = 8;
	unsigned list_size = 2;

	void add(CLI::App *app)
	{
		app->add_option("--seq", seq, "reliability sequence JSON")->required();
		app->add_option("--k-bits", k_bits, "information bits, CRC included")->required();
		app->add_option("--crc-width", crc_width, "CRC-8 (poly 0x07) when 8, none when 0");
		app->add_option("--list-size,-L", list_size, "list size");
	}

	CodeSpec build() const
	{
		const auto s = load_sequence(seq);
		const unsigned t = log2_of(s.q);
		if (k_bits % t)
			throw ConfigError("k-bits must be a multiple of t");
		if (crc_width != 0 && crc_width != 8)
			throw ConfigError("only CRC widths 0 and 8 are supported");
		return CodeSpec(build_rs_kernel(build_field(t)), s.m, select_info_set(s, k_bits / t),
				CrcSpec{crc_width, 0x07}, list_size);
	}
};

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"RS-kernel polar code workbench"};
	app.require_subcommand(1);

	// construct
	auto *construct = app.add_subcommand("construct", "build a reliability sequence");
	unsigned q = 4, m = 4, workers = 1;
	std::string method = "pdpw", zeta_list, out;
	double beta = 1.512, design = -1.8, rate = 0.5;
	std::size_t trials = 20000;
	std::uint64_t seed = 1;
	construct->add_option("--q", q, "field size");
	construct->add_option("--m", m, "kernel stages");
	construct->add_option("--method", method, "pdpw or mc")->check(CLI::IsMember({"pdpw", "mc"}));
	construct->add_option("--beta", beta, "inter-layer base");
	construct->add_option("--zeta", zeta_list, "comma-separated zeta(0..q-1); estimated when omitted (q != 4)");
	construct->add_option("--design-ebn0", design, "design Eb/N0 in dB for mc or zeta estimation");
	construct->add_option("--rate", rate, "code rate for the design channel");
	construct->add_option("--trials", trials, "Monte-Carlo trials");
	construct->add_option("--seed", seed, "master seed");
	construct->add_option("--workers", workers, "threads");
	construct->add_option("--out", out, "output JSON (stdout when omitted)");

	// encode
	auto *encode_cmd = app.add_subcommand("encode", "encode a payload");
	CodeArgs enc_args;
	enc_args.add(encode_cmd);
	std::string payload_hex;
	encode_cmd->add_option("--payload", payload_hex, "payload bits as hex, MSB first")->required();

	// decode
	auto *decode_cmd = app.add_subcommand("decode", "decode a hard-decision or soft received word");
	CodeArgs dec_args;
	dec_args.add(decode_cmd);
	std::string word_hex, received_file;
	double dec_ebn0 = 3.0;
	decode_cmd->add_option("--word", word_hex, "received code bits as hex");
	decode_cmd->add_option("--received", received_file, "file of N_b received real values");
	decode_cmd->add_option("--ebn0", dec_ebn0, "Eb/N0 assumed by the decoder");

	// ratematch
	auto *rm_cmd = app.add_subcommand("ratematch", "compute a puncturing pattern");
	std::string scheme = "mpwp", rm_seq;
	std::size_t nb = 0, mb = 0, rm_k = 0;
	rm_cmd->add_option("--scheme", scheme, "mpwp or sip")->check(CLI::IsMember({"mpwp", "sip"}));
	rm_cmd->add_option("--seq", rm_seq, "reliability sequence JSON")->required();
	rm_cmd->add_option("--k-bits", rm_k, "information bits, CRC included")->required();
	rm_cmd->add_option("--nb", nb, "mother code bits")->required();
	rm_cmd->add_option("--mb", mb, "transmitted bits")->required();

	// po-check
	auto *po_cmd = app.add_subcommand("po-check", "query the partial order");
	unsigned po_q = 4, po_m = 2;
	std::uint32_t po_i = 0, po_j = 0;
	bool po_list = false;
	po_cmd->add_option("--q", po_q, "field size");
	po_cmd->add_option("--m", po_m, "kernel stages");
	auto *opt_i = po_cmd->add_option("--i", po_i, "first index");
	auto *opt_j = po_cmd->add_option("--j", po_j, "second index");
	po_cmd->add_flag("--list", po_list, "print every pair as CSV (i,j): j dominates i");

	// simulate
	auto *sim_cmd = app.add_subcommand("simulate", "BLER simulation from a JSON config");
	std::string cfg_path, sim_out, format = "csv";
	unsigned sim_workers = 0;
	sim_cmd->add_option("--config", cfg_path, "config JSON")->required();
	sim_cmd->add_option("--out", sim_out, "output file")->required();
	sim_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
	sim_cmd->add_option("--workers", sim_workers, "override worker count");

	CLI11_PARSE(app, argc, argv);

	try {
		if (*construct) {
			const unsigned t = log2_of(q);
			const auto kernel = build_rs_kernel(build_field(t));
			ReliabilitySequence seq;
			if (method == "mc") {
				const auto stats = mc_construct(kernel, m, AwgnChannel::from_ebn0(design, rate),
								McOptions{trials, seed, workers});
				seq = build_mc_sequence(stats, q, m, design, seed);
			} else {
				ZetaTable zeta;
				if (!zeta_list.empty())
					zeta.values = parse_list(zeta_list);
				else if (q == 4)
					zeta = ZetaTable::gf4_default();
				else
					zeta = estimate_zeta(kernel, AwgnChannel::from_ebn0(design, rate),
							     ZetaOptions{trials, seed, workers})
						       .table;
				if (!zeta.monotone())
					std::cerr << "warning: zeta is not monotone\n";
				seq = build_pdpw_sequence(PdpwConfig{beta, zeta, kernel}, m);
			}
			if (out.empty())
				std::cout << sequence_to_json(seq) << "\n";
			else
				save_sequence(seq, out);
		} else if (*encode_cmd) {
			const auto code = enc_args.build();
			const auto payload = bits_from_hex(payload_hex, code.payload_bits());
			const auto cw = encode_codeword(crc_attach(payload, code.crc()), code);
			std::cout << hex_from_bits(cw) << "\n";
		} else if (*decode_cmd) {
			const auto code = dec_args.build();
			std::vector<double> y;
			if (!word_hex.empty() == !received_file.empty())
				throw ConfigError("give exactly one of --word and --received");
			if (!word_hex.empty()) {
				for (auto b : bits_from_hex(word_hex, code.code_bits()))
					y.push_back(b ? -1.0 : 1.0);
			} else {
				std::ifstream in(received_file);
				if (!in)
					throw IoError("cannot open " + received_file);
				for (double v; in >> v;)
					y.push_back(v);
				if (y.size() != code.code_bits())
					throw ConfigError("expected " + std::to_string(code.code_bits()) + " received values");
			}
			const auto ch = AwgnChannel::from_ebn0(
				dec_ebn0, static_cast<double>(code.info_bits()) / static_cast<double>(code.code_bits()));
			std::vector<double> probs(code.length() * code.q());
			word_posteriors(y, ch, code.field(), probs);
			const auto res = ListDecoder(code).decode(probs);
			std::vector<std::uint8_t> payload(res.info_bits.begin(),
							  res.info_bits.begin() + static_cast<std::ptrdiff_t>(code.payload_bits()));
			std::cout << hex_from_bits(payload) << " crc=" << (res.crc_ok ? "ok" : "fail") << "\n";
			return res.crc_ok ? 0 : 3;
		} else if (*rm_cmd) {
			const auto s = load_sequence(rm_seq);
			const unsigned t = log2_of(s.q);
			if (rm_k % t)
				throw ConfigError("k-bits must be a multiple of t");
			auto info = select_info_set(s, rm_k / t);
			const auto p = scheme == "mpwp" ? mpwp_pattern(s, info, nb, mb, t)
							: sip_pattern(info, s.length(), nb, mb, t);
			std::cout << pattern_to_json(p) << "\n";
		} else if (*po_cmd) {
			if (po_list) {
				std::cout << "i,j\n";
				for (const auto &[i, j] : po_pairs(po_q, po_m))
					std::cout << i << ',' << j << '\n';
			} else {
				if (!*opt_i || !*opt_j)
					throw ConfigError("po-check needs --i and --j, or --list");
				const PartialOrder order(po_q, po_m);
				if (po_i >= order.size() || po_j >= order.size())
					throw ConfigError("index outside [0, q^m)");
				if (po_i == po_j)
					std::cout << po_i << " == " << po_j << "\n";
				else if (order.dominates(po_j, po_i))
					std::cout << po_i << " <= " << po_j << "\n";
				else if (order.dominates(po_i, po_j))
					std::cout << po_j << " <= " << po_i << "\n";
				else
					std::cout << po_i << " || " << po_j << "\n";
			}
		} else if (*sim_cmd) {
			auto cfg = load_config(cfg_path);
			if (sim_workers)
				cfg.workers = sim_workers;
			const auto res = run_bler(cfg);
			emit(res, format, sim_out);
			for (const auto &p : res.points)
				std::cerr << p.eb_n0_db << " dB: " << p.block_errors << "/" << p.trials << " bler=" << p.bler
					  << "\n";
		}
	} catch (const ConfigError &e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	} catch (const std::exception &e) {
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	}
	return 0;
}
