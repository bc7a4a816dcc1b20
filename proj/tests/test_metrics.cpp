/*
   Copyright 2026 The mimosec Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mimosec/errors.hpp"
#include "mimosec/metrics.hpp"

using namespace mimosec;

namespace {

ComplexVector ones(Eigen::Index n) { return ComplexVector::Constant(n, Complex(1.0, 0.0)); }

} // namespace

TEST_CASE("EVM examples") {
    MetricBatch perfect(2);
    perfect.add(ComplexVector::Zero(2), ones(2), 0, 4);
    CHECK(evm_db(perfect) == kEvmFloorDb);

    // error power 0.01 of the reference
    MetricBatch small(2);
    small.add(ComplexVector::Constant(2, Complex(0.0, 0.1)), ones(2), 0, 4);
    CHECK(evm_db(small) == doctest::Approx(-20.0).epsilon(1e-12));

    // s_hat = 0 so e = -s
    MetricBatch erased(2);
    erased.add(-ones(2), ones(2), 2, 4);
    CHECK(evm_db(erased) == doctest::Approx(0.0));
}

TEST_CASE("EVM aggregates power before taking the log") {
    MetricBatch b(1);
    b.add(ComplexVector::Constant(1, 1.0), ones(1), 0, 2);
    b.add(ComplexVector::Zero(1), ones(1), 0, 2);
    CHECK(evm_db(b) == doctest::Approx(10.0 * std::log10(0.5)));
}

TEST_CASE("EVM is monotone in the error scale") {
    double prev = -1e300;
    for (double c = 1e-6; c < 1e3; c *= 3.0) {
        MetricBatch b(3);
        b.add(ComplexVector::Constant(3, Complex(c, -c)), ones(3), 0, 6);
        const double v = evm_db(b);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("BER examples") {
    MetricBatch none(1), all(1), one(1);
    none.add(ComplexVector::Zero(1), ones(1), 0, 8);
    all.add(ComplexVector::Zero(1), ones(1), 8, 8);
    one.add(ComplexVector::Zero(1), ones(1), 1, 8);
    CHECK(ber(none) == 0.0);
    CHECK(ber(all) == 1.0);
    CHECK(ber(one) == 0.125);
}

TEST_CASE("SINR examples") {
    MetricBatch zero(2);
    zero.add(ComplexVector::Zero(2), ones(2), 0, 4);
    for (double v : stream_sinr(zero)) CHECK(v == kSinrCap);

    MetricBatch unit(2);
    unit.add(ones(2), ones(2), 0, 4);
    for (double v : stream_sinr(unit)) CHECK(v == doctest::Approx(1.0));

    // mean power 0.1 and 0.5 over two trials
    MetricBatch mixed(2);
    ComplexVector e1(2), e2(2);
    e1 << std::sqrt(0.2), 1.0;
    e2 << 0.0, 0.0;
    mixed.add(e1, ones(2), 0, 4);
    mixed.add(e2, ones(2), 0, 4);
    const auto s = stream_sinr(mixed);
    CHECK(s[0] == doctest::Approx(10.0));
    CHECK(s[1] == doctest::Approx(2.0));
}

TEST_CASE("SINR scales as the inverse square of the error") {
    for (double c : {0.5, 2.0, 7.0}) {
        MetricBatch a(1), b(1);
        a.add(ComplexVector::Constant(1, 0.3), ones(1), 0, 2);
        b.add(ComplexVector::Constant(1, 0.3 * c), ones(1), 0, 2);
        CHECK(stream_sinr(a)[0] / stream_sinr(b)[0] == doctest::Approx(c * c));
    }
}

TEST_CASE("capacity and secrecy examples") {
    CHECK(capacity({1.0, 1.0}) == doctest::Approx(2.0));
    CHECK(capacity({0.0, 3.0}) == doctest::Approx(2.0));
    CHECK(secrecy_capacity({4.0, 2.0}, {4.0, 2.0}) == 0.0);
    CHECK(secrecy_capacity({1.0, 1.0}, {0.0, 0.0}) == doctest::Approx(2.0));
    CHECK(secrecy_capacity({1.0, 1.0}, {1e6, 1e6}) == 0.0);
}

TEST_CASE("merge is associative and matches a single batch") {
    SeededRng rng(300, 0);
    MetricBatch a(3), b(3), c(3), whole(3);
    MetricBatch* parts[] = {&a, &b, &c};
    for (int i = 0; i < 30; ++i) {
        const ComplexVector e = sample_complex_gaussian(rng, 3, 1, 1.0).col(0);
        const ComplexVector r = sample_complex_gaussian(rng, 3, 1, 1.0).col(0);
        parts[i % 3]->add(e, r, static_cast<std::size_t>(i % 4), 6);
        whole.add(e, r, static_cast<std::size_t>(i % 4), 6);
    }
    MetricBatch left = a;
    left.merge(b);
    left.merge(c);
    MetricBatch inner = b;
    inner.merge(c);
    MetricBatch right = a;
    right.merge(inner);
    CHECK(left.trials() == 30);
    CHECK(left.bit_errors() == right.bit_errors());
    CHECK(evm_db(left) == doctest::Approx(evm_db(right)).epsilon(1e-14));
    CHECK(evm_db(left) == doctest::Approx(evm_db(whole)).epsilon(1e-14));
    CHECK(ber(left) == ber(whole));
    for (std::size_t k = 0; k < 3; ++k)
        CHECK(stream_sinr(left)[k] == doctest::Approx(stream_sinr(whole)[k]).epsilon(1e-14));
}

TEST_CASE("metric errors") {
    MetricBatch empty(2);
    CHECK_THROWS_AS(evm_db(empty), InvalidInput);
    CHECK_THROWS_AS(ber(empty), InvalidInput);
    CHECK_THROWS_AS(stream_sinr(empty), InvalidInput);
    CHECK_THROWS_AS(empty.add(ComplexVector::Zero(3), ones(3), 0, 2), InvalidInput);
    CHECK_THROWS_AS(empty.add(ComplexVector::Zero(2), ones(2), 3, 2), InvalidInput);
    CHECK_THROWS_AS(empty.merge(MetricBatch(3)), InvalidInput);
    CHECK_THROWS_AS(capacity({-1.0}), InvalidInput);
    CHECK_THROWS_AS(secrecy_capacity({1.0}, {1.0, 2.0}), InvalidInput);
    CHECK_THROWS_AS(MetricBatch(2, 0.0), InvalidInput);
}
