#include "rspolar/construct.hpp"
#include "rspolar/error.hpp"
#include "rspolar/harness.hpp"
#include "rspolar/ratematch.hpp"

#include <json.hpp>

#include <set>

namespace rspolar {

using nlohmann::json;

namespace {

template <class T>
json opt(const std::optional<T> &v)
{
	return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> get_opt(const json &j, const char *key)
{
	auto it = j.find(key);
	if (it == j.end() || it->is_null())
		return std::nullopt;
	return it->get<T>();
}

json parse(const std::string &text, const char *what)
{
	try {
		return json::parse(text);
	} catch (const json::parse_error &e) {
		throw ConfigError(std::string(what) + ": " + e.what());
	}
}

void only_keys(const json &j, std::initializer_list<const char *> keys, const char *what)
{
	if (!j.is_object())
		throw ConfigError(std::string(what) + ": expected an object");
	const std::set<std::string> allowed(keys.begin(), keys.end());
	for (auto it = j.begin(); it != j.end(); ++it)
		if (!allowed.count(it.key()))
			throw ConfigError(std::string(what) + ": unknown key '" + it.key() + "'");
}

// Wraps nlohmann type errors so callers only see ConfigError.
template <class Fn>
auto guarded(const char *what, Fn &&fn)
{
	try {
		return fn();
	} catch (const json::exception &e) {
		throw ConfigError(std::string(what) + ": " + e.what());
	}
}

} // namespace

// ---------------------------------------------------------------- sequence

std::string sequence_to_json(const ReliabilitySequence &seq)
{
	json j;
	j["q"] = seq.q;
	j["m"] = seq.m;
	j["method"] = to_string(seq.method);
	j["beta"] = opt(seq.beta);
	j["zeta"] = seq.zeta;
	j["design_ebn0_db"] = opt(seq.design_eb_n0_db);
	j["seed"] = opt(seq.seed);
	j["weights"] = seq.weights;
	j["order"] = seq.order;
	return j.dump();
}

ReliabilitySequence sequence_from_json(const std::string &text)
{
	const json j = parse(text, "sequence");
	return guarded("sequence", [&] {
		ReliabilitySequence seq;
		seq.q = j.at("q").get<unsigned>();
		seq.m = j.at("m").get<unsigned>();
		seq.method = method_from_string(j.at("method").get<std::string>());
		seq.beta = get_opt<double>(j, "beta");
		seq.zeta = j.value("zeta", std::vector<double>{});
		seq.design_eb_n0_db = get_opt<double>(j, "design_ebn0_db");
		seq.seed = get_opt<std::uint64_t>(j, "seed");
		seq.weights = j.at("weights").get<std::vector<double>>();
		seq.order = j.at("order").get<std::vector<std::uint32_t>>();
		std::size_t n = 1;
		for (unsigned k = 0; k < seq.m; ++k)
			n *= seq.q;
		if (seq.weights.size() != n || seq.order.size() != n)
			throw ConfigError("sequence: expected " + std::to_string(n) + " weights and order entries");
		std::vector<std::uint8_t> seen(n, 0);
		for (auto i : seq.order) {
			if (i >= n || seen[i])
				throw ConfigError("sequence: order is not a permutation");
			seen[i] = 1;
		}
		return seq;
	});
}

void save_sequence(const ReliabilitySequence &seq, const std::string &path) { write_file(path, sequence_to_json(seq)); }

ReliabilitySequence load_sequence(const std::string &path) { return sequence_from_json(read_file(path)); }

// ---------------------------------------------------------------- puncture pattern

std::string pattern_to_json(const PuncturePattern &pattern)
{
	json j;
	j["full_symbols"] = pattern.full_symbols;
	if (pattern.partial)
		j["partial"] = {{"index", pattern.partial->index}, {"sigma", pattern.partial->sigma}};
	else
		j["partial"] = nullptr;
	j["bits"] = pattern.punctured_bits;
	return j.dump();
}

// ---------------------------------------------------------------- simulation config

SimConfig config_from_json(const std::string &text)
{
	const json j = parse(text, "config");
	only_keys(j,
		  {"q", "m", "k_bits", "crc", "list_size", "construction", "rate_match", "ebn0_grid", "max_trials",
		   "max_block_errors", "seed", "workers"},
		  "config");
	SimConfig c = guarded("config", [&] {
		SimConfig c;
		c.q = j.value("q", 4u);
		c.m = j.at("m").get<unsigned>();
		c.k_bits = j.at("k_bits").get<std::size_t>();
		if (auto it = j.find("crc"); it != j.end()) {
			only_keys(*it, {"width", "poly"}, "config.crc");
			c.crc_width = it->value("width", 8u);
			c.crc_poly = it->value("poly", 0x07u);
		}
		c.list_size = j.value("list_size", 2u);
		if (auto it = j.find("construction"); it != j.end()) {
			only_keys(*it, {"method", "label", "beta", "zeta", "design_ebn0_db", "trials", "seed", "file"},
				  "config.construction");
			auto &k = c.construction;
			k.method = method_from_string(it->value("method", std::string("pdpw")));
			k.label = it->value("label", std::string());
			k.beta = it->value("beta", 1.512);
			k.zeta = it->value("zeta", std::vector<double>{});
			k.design_eb_n0_db = it->value("design_ebn0_db", 0.0);
			k.trials = it->value("trials", std::size_t{20000});
			k.seed = it->value("seed", std::uint64_t{1});
			k.file = it->value("file", std::string());
		}
		if (auto it = j.find("rate_match"); it != j.end()) {
			only_keys(*it, {"scheme", "mb"}, "config.rate_match");
			c.rate_match = scheme_from_string(it->value("scheme", std::string("none")));
			c.m_bits = it->value("mb", std::size_t{0});
		}
		c.eb_n0_grid = j.at("ebn0_grid").get<std::vector<double>>();
		c.max_trials = j.value("max_trials", std::size_t{100000});
		c.max_block_errors = j.value("max_block_errors", std::size_t{100});
		c.seed = j.value("seed", std::uint64_t{1});
		c.workers = j.value("workers", 1u);
		return c;
	});
	c.validate();
	return c;
}

std::string config_to_json(const SimConfig &c)
{
	json j;
	j["q"] = c.q;
	j["m"] = c.m;
	j["k_bits"] = c.k_bits;
	j["crc"] = {{"width", c.crc_width}, {"poly", c.crc_poly}};
	j["list_size"] = c.list_size;
	const auto &k = c.construction;
	json cj{{"method", to_string(k.method)}};
	if (!k.label.empty())
		cj["label"] = k.label;
	if (!k.file.empty()) {
		cj["file"] = k.file;
	} else if (k.method == Method::Pdpw) {
		cj["beta"] = k.beta;
		if (!k.zeta.empty())
			cj["zeta"] = k.zeta;
	} else {
		cj["design_ebn0_db"] = k.design_eb_n0_db;
		cj["trials"] = k.trials;
		cj["seed"] = k.seed;
	}
	j["construction"] = cj;
	j["rate_match"] = {{"scheme", to_string(c.rate_match)}, {"mb", c.m_bits}};
	j["ebn0_grid"] = c.eb_n0_grid;
	j["max_trials"] = c.max_trials;
	j["max_block_errors"] = c.max_block_errors;
	j["seed"] = c.seed;
	j["workers"] = c.workers;
	return j.dump(2);
}

// ---------------------------------------------------------------- simulation result

std::string result_to_json(const SimResult &r)
{
	json j;
	j["version"] = r.version;
	j["seed"] = r.seed;
	j["rate"] = r.rate;
	j["k_bits"] = r.k_bits;
	j["m_bits"] = r.m_bits;
	j["construction"] = r.construction;
	j["rate_match"] = r.rate_match;
	j["points"] = json::array();
	for (const auto &p : r.points)
		j["points"].push_back({{"eb_n0_db", p.eb_n0_db},
				       {"trials", p.trials},
				       {"block_errors", p.block_errors},
				       {"bler", p.bler},
				       {"wall_time_s", p.wall_time_s}});
	return j.dump(2);
}

SimResult result_from_json(const std::string &text)
{
	const json j = parse(text, "result");
	return guarded("result", [&] {
		SimResult r;
		r.version = j.at("version").get<std::string>();
		r.seed = j.at("seed").get<std::uint64_t>();
		r.rate = j.at("rate").get<double>();
		r.k_bits = j.at("k_bits").get<std::size_t>();
		r.m_bits = j.at("m_bits").get<std::size_t>();
		r.construction = j.at("construction").get<std::string>();
		r.rate_match = j.at("rate_match").get<std::string>();
		for (const auto &p : j.at("points"))
			r.points.push_back({p.at("eb_n0_db").get<double>(), p.at("trials").get<std::size_t>(),
					    p.at("block_errors").get<std::size_t>(), p.at("bler").get<double>(),
					    p.value("wall_time_s", 0.0)});
		return r;
	});
}

} // namespace rspolar
