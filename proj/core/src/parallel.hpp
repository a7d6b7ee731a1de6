#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rspolar::detail {

// Runs fn(chunk, begin, end) over [0, total) split into fixed-size chunks.
// Chunk boundaries depend only on total and chunk_size, so callers that
// reduce per-chunk results in chunk order get identical output for any
// worker count.
template <class Fn>
void for_each_chunk(std::size_t total, std::size_t chunk_size, unsigned workers, Fn &&fn)
{
	const std::size_t chunks = (total + chunk_size - 1) / chunk_size;
	if (chunks == 0)
		return;
	workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(chunks)));
	std::atomic<std::size_t> next{0};
	std::exception_ptr error;
	std::mutex error_lock;
	auto run = [&] {
		try {
			for (std::size_t c; (c = next.fetch_add(1)) < chunks;)
				fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
		} catch (...) {
			std::lock_guard lock(error_lock);
			if (!error)
				error = std::current_exception();
			next = chunks;
		}
	};
	if (workers == 1) {
		run();
	} else {
		std::vector<std::thread> pool;
		for (unsigned w = 0; w < workers; ++w)
			pool.emplace_back(run);
		for (auto &th : pool)
			th.join();
	}
	if (error)
		std::rethrow_exception(error);
}

} // namespace rspolar::detail
