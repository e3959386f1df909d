// ----------------------------------------------------------------------------
// Copyright 2026 The GraphForge Authors
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
// ----------------------------------------------------------------------------

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

#include "graphforge/serialize/serialize.hpp"
#include "oracles.hpp"
#include "random_graph.hpp"

using namespace graphforge;
namespace fs = std::filesystem;

namespace
{
    struct Outcome
    {
        int code = -1;
        std::string out;
        std::string err;
    };

    std::string slurp(const fs::path& path)
    {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void spit(const fs::path& path, const std::string& text)
    {
        std::ofstream out(path, std::ios::binary);
        out << text;
    }

    size_t count(const std::string& text, const std::string& needle)
    {
        size_t n = 0;
        for (size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
            ++n;
        return n;
    }

    const char* affine = R"({"name": "affine", "nodes": [
        {"id": 1, "op": "Parameter", "attrs": {"element_type": "f64", "shape": [2, 3]}, "inputs": []},
        {"id": 2, "op": "Parameter", "attrs": {"element_type": "f64", "shape": [3, 1]}, "inputs": []},
        {"id": 3, "op": "Parameter", "attrs": {"element_type": "f64", "shape": [2, 1]}, "inputs": []},
        {"id": 4, "op": "Dot", "attrs": {}, "inputs": [[1, 0], [2, 0]]},
        {"id": 5, "op": "Add", "attrs": {}, "inputs": [[4, 0], [3, 0]]}],
        "parameters": [1, 2, 3], "results": [[5, 0]]})";

    const char* product = R"({"name": "xy", "nodes": [
        {"id": 1, "op": "Parameter", "attrs": {"element_type": "f64", "shape": []}, "inputs": []},
        {"id": 2, "op": "Parameter", "attrs": {"element_type": "f64", "shape": []}, "inputs": []},
        {"id": 3, "op": "Multiply", "attrs": {}, "inputs": [[1, 0], [2, 0]]}],
        "parameters": [1, 2], "results": [[3, 0]]})";

    const char* identities = R"({"nodes": [
        {"id": 1, "op": "Parameter", "attrs": {"element_type": "f64", "shape": [3]}, "inputs": []},
        {"id": 2, "op": "Constant", "attrs": {"element_type": "f64", "shape": [3], "data": [1, 1, 1]}, "inputs": []},
        {"id": 3, "op": "Multiply", "attrs": {}, "inputs": [[1, 0], [2, 0]]},
        {"id": 4, "op": "Constant", "attrs": {"element_type": "f64", "shape": [3], "data": [0, 0, 0]}, "inputs": []},
        {"id": 5, "op": "Add", "attrs": {}, "inputs": [[3, 0], [4, 0]]}],
        "parameters": [1], "results": [[5, 0]]})";

    const char* cyclic = R"({"nodes": [
        {"id": 1, "op": "Parameter", "attrs": {"element_type": "f64", "shape": [2]}, "inputs": []},
        {"id": 2, "op": "Add", "attrs": {}, "inputs": [[1, 0], [3, 0]]},
        {"id": 3, "op": "Negate", "attrs": {}, "inputs": [[2, 0]]}],
        "parameters": [1], "results": [[3, 0]]})";

    /// Sum(x * Exp(Tanh(x))) over x:[4]
    const char* smooth = R"({"nodes": [
        {"id": 1, "op": "Parameter", "attrs": {"element_type": "f64", "shape": [4]}, "inputs": []},
        {"id": 2, "op": "Tanh", "attrs": {}, "inputs": [[1, 0]]},
        {"id": 3, "op": "Exp", "attrs": {}, "inputs": [[2, 0]]},
        {"id": 4, "op": "Multiply", "attrs": {}, "inputs": [[1, 0], [3, 0]]},
        {"id": 5, "op": "Sum", "attrs": {"reduction_axes": [0]}, "inputs": [[4, 0]]}],
        "parameters": [1], "results": [[5, 0]]})";

    const char* conv_net = R"({"name": "convnet", "nodes": [
        {"id": 1, "op": "Parameter", "attrs": {"element_type": "f64", "shape": [2, 3, 7, 6]}, "inputs": []},
        {"id": 2, "op": "Parameter", "attrs": {"element_type": "f64", "shape": [4, 3, 3, 3]}, "inputs": []},
        {"id": 3, "op": "Conv2D", "attrs": {"padding": [1, 1, 1, 1], "strides": [1, 1]}, "inputs": [[1, 0], [2, 0]]},
        {"id": 4, "op": "Relu", "attrs": {}, "inputs": [[3, 0]]},
        {"id": 5, "op": "Parameter", "attrs": {"element_type": "f64", "shape": [2, 4, 2, 2]}, "inputs": []},
        {"id": 6, "op": "Conv2D", "attrs": {"padding": [0, 1, 0, 0], "strides": [2, 2]}, "inputs": [[4, 0], [5, 0]]},
        {"id": 7, "op": "Tanh", "attrs": {}, "inputs": [[6, 0]]}],
        "parameters": [1, 2, 5], "results": [[7, 0]]})";

    /// The driver under test: $GRAPHFORGE_BIN, else the one from this build.
    std::string binary()
    {
        const char* bin = std::getenv("GRAPHFORGE_BIN");
        return bin != nullptr && *bin != '\0' ? bin : GRAPHFORGE_CLI;
    }

    class cli : public ::testing::Test
    {
    protected:
        void SetUp() override
        {
            const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
            dir = fs::temp_directory_path() /
                  ("graphforge_cli_" + std::to_string(::getpid()) + "_" + info->name());
            fs::remove_all(dir);
            fs::create_directories(dir);
        }

        void TearDown() override { fs::remove_all(dir); }

        fs::path file(const std::string& name, const std::string& text)
        {
            fs::path p = dir / name;
            spit(p, text);
            return p;
        }

        fs::path tensor(const std::string& name, const TensorValue& t)
        {
            return file(name, print_tensor(t));
        }

        Outcome run(const std::string& args, const std::string& env = "")
        {
            fs::path out = dir / "stdout.txt";
            fs::path err = dir / "stderr.txt";
            std::string command = "env -u GRAPHFORGE_CONV_LAYOUT " + env + " '" + binary() + "' " +
                                  args + " >" + out.string() + " 2>" + err.string();
            int status = std::system(command.c_str());
            Outcome o;
            o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
            o.out = slurp(out);
            o.err = slurp(err);
            // Exit status and diagnostics go together.
            EXPECT_EQ(o.code != 0, !o.err.empty()) << args << "\n" << o.err;
            return o;
        }

        TensorValue result(const std::string& subdir, size_t k = 0)
        {
            return parse_tensor(slurp(dir / subdir / ("result" + std::to_string(k) + ".tensor.json")));
        }

        fs::path dir;
    };

    std::string q(const fs::path& p)
    {
        return "'" + p.string() + "'";
    }
}

TEST_F(cli, validate)
{
    auto ok = run("validate " + q(file("a.gf.json", affine)));
    EXPECT_EQ(ok.code, 0);
    EXPECT_EQ(ok.out, "OK\n");

    auto bad = run("validate " + q(file("c.gf.json", cyclic)));
    EXPECT_EQ(bad.code, 2);
    EXPECT_NE(bad.err.find("CycleDetected{2,3}"), std::string::npos) << bad.err;
    EXPECT_EQ(bad.out, "");

    EXPECT_EQ(run("validate " + q(dir / "missing.gf.json")).code, 4);
    EXPECT_EQ(run("validate " + q(file("s.gf.json", "{\"nodes\": ["))).code, 2);
}

TEST_F(cli, binary_from_environment)
{
    const char* bin = std::getenv("GRAPHFORGE_BIN");
    if (bin == nullptr)
        GTEST_SKIP() << "GRAPHFORGE_BIN is set by ctest";
    EXPECT_TRUE(fs::equivalent(bin, GRAPHFORGE_CLI));
    auto help = run("--help");
    EXPECT_EQ(help.code, 0);
    for (const char* sub : {"validate", "run", "grad", "optimize", "plan", "partition", "dot"})
        EXPECT_NE(help.out.find(sub), std::string::npos) << sub;
}

TEST_F(cli, usage_errors)
{
    EXPECT_EQ(run("").code, 4);
    EXPECT_EQ(run("frobnicate x").code, 4);
    EXPECT_EQ(run("validate").code, 4);
}

TEST_F(cli, run_affine)
{
    auto fn = file("a.gf.json", affine);
    auto w = tensor("w.tensor.json", TensorValue::from_row_major<double>({2, 3}, {1, 2, 3, 4, 5, 6}));
    auto x = tensor("x.tensor.json", TensorValue::from_row_major<double>({3, 1}, {1, 0, -1}));
    auto b = tensor("b.tensor.json", TensorValue::from_row_major<double>({2, 1}, {0.5, -0.5}));

    auto o = run("run " + q(fn) + " -i " + q(w) + " -i " + q(x) + " -i " + q(b) + " --out " +
                 q(dir / "opt"));
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out, "result0 f64 [2,1] -> " + (dir / "opt" / "result0.tensor.json").string() + "\n");
    EXPECT_EQ(result("opt").to_row_major<double>(), (std::vector<double>{-1.5, -2.5}));

    // Named bindings in any order
    o = run("run " + q(fn) + " -i p2=" + q(b) + " -i 0=" + q(w) + " -i p1=" + q(x) + " --out " +
            q(dir / "named"));
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(slurp(dir / "named" / "result0.tensor.json"), slurp(dir / "opt" / "result0.tensor.json"));

    EXPECT_EQ(run("run " + q(fn) + " -i " + q(w) + " -i " + q(x)).code, 4);
    EXPECT_EQ(run("run " + q(fn) + " -i p0=" + q(w) + " -i p0=" + q(x) + " -i p2=" + q(b)).code, 4);
    EXPECT_EQ(run("run " + q(fn) + " -i q0=" + q(w)).code, 4);
    EXPECT_EQ(run("run " + q(fn) + " -i " + q(w) + " -i " + q(x) + " -i " + q(dir / "nope.json")).code, 4);
}

TEST_F(cli, run_rejects_wrong_rank)
{
    auto fn = file("a.gf.json", affine);
    auto w = tensor("w.tensor.json", TensorValue::from_row_major<double>({6}, {1, 2, 3, 4, 5, 6}));
    auto x = tensor("x.tensor.json", TensorValue::from_row_major<double>({3, 1}, {1, 0, -1}));
    auto b = tensor("b.tensor.json", TensorValue::from_row_major<double>({2, 1}, {0.5, -0.5}));
    auto o = run("run " + q(fn) + " -i " + q(w) + " -i " + q(x) + " -i " + q(b) + " -o " + q(dir));
    EXPECT_EQ(o.code, 2);
    EXPECT_FALSE(fs::exists(dir / "result0.tensor.json"));
}

TEST_F(cli, run_optimized_matches_unoptimized)
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 8; ++trial)
    {
        Function fn = test::random_function(rng);
        auto path = file("g.gf.json", print_function(fn));
        std::string args = "run " + q(path);
        auto inputs = test::random_inputs(fn, rng);
        for (size_t k = 0; k < inputs.size(); ++k)
        {
            args += " -i " + q(tensor("in" + std::to_string(k) + ".tensor.json", inputs[k]));
        }
        auto plain = run(args + " --no-optimize -o " + q(dir / "plain"));
        auto optimized = run(args + " -o " + q(dir / "opt"));
        ASSERT_EQ(plain.code, 0) << plain.err;
        ASSERT_EQ(optimized.code, 0) << optimized.err;
        for (size_t k = 0; k < fn.results().size(); ++k)
        {
            EXPECT_LE(test::max_abs_difference(result("plain", k), result("opt", k)), 1e-12)
                << test::describe(fn);
        }
    }
}

TEST_F(cli, grad_product)
{
    auto fn = file("xy.gf.json", product);
    auto g = dir / "grad.gf.json";
    auto o = run("grad " + q(fn) + " --wrt p0,p1 --out " + q(g));
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out, "gradient: 2 results, seed p2 -> " + g.string() + "\n");

    auto x = tensor("x.tensor.json", TensorValue::from_row_major<double>({}, {3}));
    auto y = tensor("y.tensor.json", TensorValue::from_row_major<double>({}, {5}));
    auto seed = tensor("s.tensor.json", TensorValue::from_row_major<double>({}, {1}));
    o = run("run " + q(g) + " -i " + q(x) + " -i " + q(y) + " -i " + q(seed) + " -o " + q(dir / "r"));
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(result("r", 0).to_row_major<double>(), std::vector<double>{5});
    EXPECT_EQ(result("r", 1).to_row_major<double>(), std::vector<double>{3});

    // The gradient document is already canonical.
    std::string text = slurp(g);
    EXPECT_EQ(print_function(parse_function(text)), text);
    auto stdout_doc = run("grad " + q(fn));
    EXPECT_EQ(stdout_doc.out, text);

    EXPECT_EQ(run("grad " + q(fn) + " --wrt p7").code, 4);
    EXPECT_EQ(run("grad " + q(fn) + " --wrt zz").code, 4);
}

TEST_F(cli, grad_rejects_max_reduce)
{
    auto fn = file("m.gf.json", R"({"nodes": [
        {"id": 1, "op": "Parameter", "attrs": {"element_type": "f64", "shape": [3]}, "inputs": []},
        {"id": 2, "op": "Sum", "attrs": {"reduction_axes": [0], "reduction_kind": "max"}, "inputs": [[1, 0]]}],
        "parameters": [1], "results": [[2, 0]]})");
    auto o = run("grad " + q(fn));
    EXPECT_EQ(o.code, 2);
    EXPECT_NE(o.err.find("NonDifferentiableOp"), std::string::npos) << o.err;
}

TEST_F(cli, grad_agrees_with_finite_differences_of_runs)
{
    auto fn = file("f.gf.json", smooth);
    auto g = dir / "grad.gf.json";
    ASSERT_EQ(run("grad " + q(fn) + " -o " + q(g)).code, 0);

    std::vector<double> point{0.3, -1.1, 1.7, 0.05};
    auto at = [&](const std::vector<double>& x) {
        auto in = tensor("x.tensor.json", TensorValue::from_row_major<double>({4}, x));
        auto o = run("run " + q(fn) + " -i " + q(in) + " -o " + q(dir / "f"));
        EXPECT_EQ(o.code, 0) << o.err;
        return result("f").to_row_major<double>().at(0);
    };

    auto x = tensor("p.tensor.json", TensorValue::from_row_major<double>({4}, point));
    auto seed = tensor("s.tensor.json", TensorValue::from_row_major<double>({}, {1}));
    ASSERT_EQ(run("run " + q(g) + " -i " + q(x) + " -i " + q(seed) + " -o " + q(dir / "g")).code, 0);
    auto analytic = result("g").to_row_major<double>();
    ASSERT_EQ(analytic.size(), 4u);

    for (size_t i = 0; i < point.size(); ++i)
    {
        double h = 1e-6 * std::max(1.0, std::abs(point[i]));
        auto up = point, down = point;
        up[i] += h;
        down[i] -= h;
        double numeric = (at(up) - at(down)) / (2 * h);
        double rel = std::abs(analytic[i] - numeric) /
                     std::max({1.0, std::abs(analytic[i]), std::abs(numeric)});
        EXPECT_LT(rel, 1e-5) << i << ": " << analytic[i] << " vs " << numeric;
    }
}

TEST_F(cli, optimize)
{
    auto fn = file("id.gf.json", identities);
    auto once = dir / "once.gf.json";
    auto o = run("optimize " + q(fn) + " --passes simplify,cse,fold --out " + q(once));
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out.rfind("nodes: 5 -> ", 0), 0u) << o.out;
    Function optimized = parse_function(slurp(once));
    EXPECT_LT(optimized.node_count(), 5u);

    auto x = tensor("x.tensor.json", TensorValue::from_row_major<double>({3}, {1.5, -0.0, 1e-300}));
    ASSERT_EQ(run("run " + q(fn) + " --no-optimize -i " + q(x) + " -o " + q(dir / "a")).code, 0);
    ASSERT_EQ(run("run " + q(once) + " --no-optimize -i " + q(x) + " -o " + q(dir / "b")).code, 0);
    EXPECT_LE(test::max_abs_difference(result("a"), result("b")), 1e-12);

    // File-level fixpoint
    auto twice = dir / "twice.gf.json";
    ASSERT_EQ(run("optimize " + q(once) + " --out " + q(twice)).code, 0);
    EXPECT_EQ(slurp(twice), slurp(once));

    // Default passes and stdout
    o = run("optimize " + q(fn));
    EXPECT_EQ(o.out, slurp(once));

    o = run("optimize " + q(fn) + " --passes simplify,bogus");
    EXPECT_EQ(o.code, 4);
    EXPECT_NE(o.err.find("UnknownPass"), std::string::npos) << o.err;
}

TEST_F(cli, optimize_is_idempotent_on_random_graphs)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial)
    {
        auto path = file("g.gf.json", print_function(test::random_function(rng)));
        auto first = run("optimize " + q(path) + " --passes simplify,cse,fold,layouts");
        ASSERT_EQ(first.code, 0) << first.err;
        auto again_path = file("h.gf.json", first.out);
        auto second = run("optimize " + q(again_path) + " --passes simplify,cse,fold,layouts");
        ASSERT_EQ(second.code, 0) << second.err;
        EXPECT_EQ(second.out, first.out);
    }
}

TEST_F(cli, plan_chain_uses_two_slots)
{
    for (size_t n : {2u, 3u, 9u})
    {
        // Parameter -> n Exp intermediates -> Exp result, 100 f64 each.
        std::string nodes =
            R"({"id": 1, "op": "Parameter", "attrs": {"element_type": "f64", "shape": [100]}, "inputs": []})";
        for (size_t i = 0; i <= n; ++i)
        {
            nodes += ",\n{\"id\": " + std::to_string(i + 2) + R"(, "op": "Exp", "attrs": {}, "inputs": [[)" +
                     std::to_string(i + 1) + ", 0]]}";
        }
        std::string doc = "{\"nodes\": [" + nodes + "], \"parameters\": [1], \"results\": [[" +
                          std::to_string(n + 2) + ", 0]]}";
        auto o = run("plan " + q(file("chain.gf.json", doc)));
        ASSERT_EQ(o.code, 0) << o.err;
        size_t slot = (800 + 63) / 64 * 64;
        EXPECT_NE(o.out.find("\narena " + std::to_string(2 * slot) + " bytes\n"), std::string::npos)
            << o.out;
        EXPECT_EQ(o.out.rfind("# id\tstart\tend\toffset\tsize\n", 0), 0u);
    }
}

TEST_F(cli, partition)
{
    auto fn = file("a.gf.json", affine);
    auto o = run("partition " + q(fn));
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_EQ(o.out, "0\tfallback\t4,5\n");
    o = run("partition " + q(fn) + " --supported Dot");
    EXPECT_EQ(o.out, "0\tmain\t4\n1\tfallback\t5\n");
    o = run("partition " + q(fn) + " --supported Add,Dot");
    EXPECT_EQ(o.out, "0\tmain\t4,5\n");
    EXPECT_EQ(run("partition " + q(fn) + " --supported Dot,Bogus").code, 4);
}

TEST_F(cli, dot_output)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial)
    {
        Function fn = test::random_function(rng);
        auto o = run("dot " + q(file("g.gf.json", print_function(fn))));
        ASSERT_EQ(o.code, 0) << o.err;
        EXPECT_EQ(o.out.rfind("digraph ", 0), 0u);
        EXPECT_EQ(count(o.out, "{"), count(o.out, "}"));
        size_t arity = 0;
        for (const auto& [id, node] : fn.nodes())
            arity += node.inputs.size();
        EXPECT_EQ(count(o.out, " -> "), arity);
        EXPECT_EQ(count(o.out, "[label="), fn.node_count());
    }
}

TEST_F(cli, conv_layout_env)
{
    auto fn = file("conv.gf.json", conv_net);
    Function parsed = parse_function(conv_net);
    std::mt19937_64 rng(99);
    std::string args = "run " + q(fn);
    for (size_t k = 0; k < parsed.parameters().size(); ++k)
    {
        auto desc = parsed.descriptor(Input{parsed.parameters()[k]});
        args += " -i " + q(tensor("in" + std::to_string(k) + ".tensor.json",
                                  test::random_tensor(desc, Layout::identity(desc.shape.rank()), rng)));
    }
    auto identity = run(args + " -o " + q(dir / "identity"), "GRAPHFORGE_CONV_LAYOUT=identity");
    auto nhwc = run(args + " -o " + q(dir / "nhwc"), "GRAPHFORGE_CONV_LAYOUT=nhwc");
    auto unset = run(args + " -o " + q(dir / "unset"));
    ASSERT_EQ(identity.code, 0) << identity.err;
    ASSERT_EQ(nhwc.code, 0) << nhwc.err;
    ASSERT_EQ(unset.code, 0) << unset.err;
    EXPECT_LE(test::max_abs_difference(result("identity"), result("nhwc")), 1e-12);
    EXPECT_EQ(slurp(dir / "identity" / "result0.tensor.json"), slurp(dir / "unset" / "result0.tensor.json"));

    // The nhwc plan places converted tensors, so it differs from identity.
    auto plan_identity = run("plan " + q(fn), "GRAPHFORGE_CONV_LAYOUT=identity");
    auto plan_nhwc = run("plan " + q(fn), "GRAPHFORGE_CONV_LAYOUT=nhwc");
    EXPECT_NE(plan_identity.out, plan_nhwc.out);

    auto bad = run(args, "GRAPHFORGE_CONV_LAYOUT=nchw");
    EXPECT_EQ(bad.code, 4);
    EXPECT_NE(bad.err.find("GRAPHFORGE_CONV_LAYOUT"), std::string::npos);
}

TEST_F(cli, stdout_is_deterministic)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 6; ++trial)
    {
        Function fn = test::random_function(rng);
        auto path = file("g.gf.json", print_function(fn));
        std::string args = "run " + q(path);
        auto inputs = test::random_inputs(fn, rng);
        for (size_t k = 0; k < inputs.size(); ++k)
            args += " -i " + q(tensor("in" + std::to_string(k) + ".tensor.json", inputs[k]));
        for (std::string command : {"validate " + q(path),
                                    "plan " + q(path),
                                    "dot " + q(path),
                                    "optimize " + q(path),
                                    "partition " + q(path) + " --supported Add,Multiply,Dot,Exp"})
        {
            auto a = run(command);
            auto b = run(command);
            EXPECT_EQ(a.code, 0) << a.err;
            EXPECT_EQ(a.out, b.out) << command;
            EXPECT_EQ(a.err, "");
        }
        ASSERT_EQ(run(args + " -o " + q(dir / "a")).code, 0);
        ASSERT_EQ(run(args + " -o " + q(dir / "b")).code, 0);
        for (size_t k = 0; k < fn.results().size(); ++k)
        {
            std::string name = "result" + std::to_string(k) + ".tensor.json";
            EXPECT_EQ(slurp(dir / "a" / name), slurp(dir / "b" / name));
        }
    }
}
