#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace qartin {

/**
 * Evaluates f(0), ..., f(n-1) on up to `workers` threads, in contiguous
 * blocks, and returns the results in index order. The first exception thrown
 * by any block is rethrown after all threads have joined.
 */
template <class F>
auto parallel_map(std::size_t n, unsigned workers, F &&f) -> std::vector<std::invoke_result_t<F &, std::size_t>>
{
	using R = std::invoke_result_t<F &, std::size_t>;
	std::vector<R> out(n);
	workers = std::max(1u, workers);
	if (workers == 1 || n < 2)
	{
		for (std::size_t i = 0; i < n; ++i)
			out[i] = f(i);
		return out;
	}
	std::size_t blocks = std::min<std::size_t>(workers, n);
	std::vector<std::exception_ptr> errors(blocks);
	std::vector<std::thread> threads;
	threads.reserve(blocks);
	for (std::size_t b = 0; b < blocks; ++b)
	{
		std::size_t lo = n * b / blocks, hi = n * (b + 1) / blocks;
		threads.emplace_back([&, lo, hi, b] {
			try
			{
				for (std::size_t i = lo; i < hi; ++i)
					out[i] = f(i);
			}
			catch (...)
			{
				errors[b] = std::current_exception();
			}
		});
	}
	for (auto &t : threads)
		t.join();
	for (auto &e : errors)
		if (e)
			std::rethrow_exception(e);
	return out;
}

} // namespace qartin
