// Times the quotient census, serial reference against the OpenMP path, and
// checks that both emit identical JSON. Usage: bench_enumerate [order] [jobs]
#include <chrono>
#include <cstdlib>
#include <iostream>

#include "mq/classifier.hpp"
#include "mq/json_io.hpp"

int main(int argc, char** argv) {
  int max_order = argc > 1 ? std::atoi(argv[1]) : 12;
  int jobs = argc > 2 ? std::atoi(argv[2]) : 4;
  if (max_order < 1 || max_order > 18 || jobs < 1) {
    std::cerr << "usage: bench_enumerate [order 1..18] [jobs >= 1]\n";
    return 64;
  }

  using clock = std::chrono::steady_clock;
  mq::CensusOptions opts;
  opts.max_order = max_order;

  opts.jobs = 1;
  auto t0 = clock::now();
  mq::QuotientCensus serial = mq::enumerate_quotients_serial(opts);
  auto t1 = clock::now();

  opts.jobs = jobs;
  mq::QuotientCensus parallel = mq::enumerate_quotients_parallel(opts);
  auto t2 = clock::now();

  auto ms = [](auto a, auto b) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
  };
  std::string sj = mq::census_to_json(serial);
  std::string pj = mq::census_to_json(parallel);
  std::cout << "order " << max_order << "\n"
            << "serial:   " << ms(t0, t1) << " ms\n"
            << "parallel: " << ms(t1, t2) << " ms (" << jobs << " jobs)\n"
            << "identical output: " << (sj == pj ? "yes" : "NO") << "\n";
  return sj == pj ? 0 : 1;
}
