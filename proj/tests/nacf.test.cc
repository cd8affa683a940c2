// Copyright 2026 The HQCD Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hqcd/nacf.h"

#include "gtest/gtest.h"
#include "hqcd/hamiltonian.h"
#include "test_util.h"

using namespace hqcd;

TEST(Nacf, weight_formula) {
    NacfConfig cfg;
    cfg.beta = 10;
    std::vector<double> var{0.0, 0.1};
    auto w = nacf_weights(var, cfg);
    ASSERT_EQ(w[0], 1.0);
    ASSERT_DOUBLE_EQ(w[1], 0.5);
}

TEST(Nacf, identity_cases) {
    std::vector<double> var{0.3, 7.0, 0.0};
    NacfConfig zero;
    zero.beta = 0;
    NacfConfig off;
    off.enabled = false;
    for (const auto &cfg : {zero, off}) {
        for (double w : nacf_weights(var, cfg)) {
            ASSERT_EQ(w, 1.0);
        }
    }
}

TEST(Nacf, rejects_negative) {
    std::vector<double> var{-0.1};
    ASSERT_THROW(nacf_weights(var, NacfConfig{}), std::invalid_argument);
    NacfConfig bad;
    bad.beta = -1;
    std::vector<double> ok{0.1};
    ASSERT_THROW(nacf_weights(ok, bad), std::invalid_argument);
}

TEST(Nacf, monotone_in_variance) {
    auto rng = hqcd_test::test_rng(11);
    std::uniform_real_distribution<double> u(0, 5);
    for (int trial = 0; trial < 100; trial++) {
        NacfConfig cfg;
        cfg.beta = u(rng) + 1e-3;
        std::vector<double> var(16);
        for (auto &v : var) {
            v = u(rng);
        }
        auto w = nacf_weights(var, cfg);
        for (size_t i = 0; i < var.size(); i++) {
            ASSERT_GT(w[i], 0.0);
            ASSERT_LE(w[i], 1.0);
            for (size_t j = 0; j < var.size(); j++) {
                if (var[i] < var[j]) {
                    ASSERT_GT(w[i], w[j]);
                }
            }
        }
    }
}

TEST(Nacf, reweight) {
    Hamiltonian h(1, {{4.0, {0}, TermTag::net}});
    std::vector<double> half{0.5};
    Hamiltonian r = reweight(h, half);
    ASSERT_EQ(r.terms()[0].coefficient, 2.0);
    ASSERT_EQ(r.terms()[0].tag, TermTag::net);
    std::vector<double> ones{1.0};
    ASSERT_EQ(reweight(h, ones).terms(), h.terms());
    std::vector<double> two{1.0, 1.0};
    ASSERT_THROW(reweight(h, two), std::invalid_argument);
}

TEST(Nacf, reweight_inverse_and_sign) {
    auto rng = hqcd_test::test_rng(12);
    std::uniform_real_distribution<double> u(-10, 10);
    std::uniform_real_distribution<double> pos(0.01, 1.0);
    std::vector<PauliTerm> terms;
    std::vector<double> w, inv;
    for (int i = 0; i < 10; i++) {
        terms.push_back({u(rng), {i % 3}, TermTag::gen});
        w.push_back(pos(rng));
        inv.push_back(1.0 / w.back());
    }
    Hamiltonian h(3, terms);
    Hamiltonian once = reweight(h, w);
    Hamiltonian back = reweight(once, inv);
    for (size_t i = 0; i < terms.size(); i++) {
        ASSERT_NEAR(back.terms()[i].coefficient, terms[i].coefficient, 1e-12 * std::abs(terms[i].coefficient) + 1e-12);
        ASSERT_EQ(std::signbit(once.terms()[i].coefficient), std::signbit(terms[i].coefficient));
    }
}

TEST(Nacf, smoother) {
    VarianceSmoother s(0.5);
    std::vector<double> a{4.0}, b{0.0};
    ASSERT_EQ(s.update(a)[0], 4.0);
    ASSERT_EQ(s.update(b)[0], 2.0);
    s.reset();
    ASSERT_EQ(s.update(b)[0], 0.0);
}
