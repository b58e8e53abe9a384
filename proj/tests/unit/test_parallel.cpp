#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "editscore/parallel.hpp"

using namespace editscore;

namespace {

struct ThreadsEnv {
  explicit ThreadsEnv(const char* value) {
    if (value) {
      setenv("VEFX_EVAL_THREADS", value, 1);
    } else {
      unsetenv("VEFX_EVAL_THREADS");
    }
  }
  ~ThreadsEnv() { unsetenv("VEFX_EVAL_THREADS"); }
};

}  // namespace

TEST(WorkerCount, ReadsEnvironment) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  {
    ThreadsEnv env("3");
    EXPECT_EQ(worker_count(), 3u);
  }
  {
    ThreadsEnv env(nullptr);
    EXPECT_EQ(worker_count(), hw);
  }
  for (const char* bad : {"0", "-2", "many", ""}) {
    ThreadsEnv env(bad);
    EXPECT_EQ(worker_count(), hw) << bad;
  }
}

TEST(ParallelFor, EachIndexRunsOnce) {
  for (const char* threads : {"1", "2", "7"}) {
    ThreadsEnv env(threads);
    std::vector<std::atomic<int>> hits(101);
    parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(ParallelFor, ResultsIndependentOfWorkerCount) {
  auto run = [](const char* threads) {
    ThreadsEnv env(threads);
    std::vector<double> out(64);
    parallel_for(out.size(), [&](std::size_t i) {
      double s = 0.0;
      for (std::size_t k = 1; k <= 1000 + i; ++k) s += 1.0 / static_cast<double>(k * k);
      out[i] = s;
    });
    return out;
  };
  EXPECT_EQ(run("1"), run("4"));
}

TEST(ParallelFor, RethrowsWorkerException) {
  ThreadsEnv env("4");
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 6) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  EXPECT_NO_THROW(parallel_for(0, [](std::size_t) { FAIL(); }));
}
