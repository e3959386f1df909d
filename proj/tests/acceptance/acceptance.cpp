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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "graphforge/autodiff/autodiff.hpp"
#include "graphforge/core/builders.hpp"
#include "graphforge/core/validate.hpp"
#include "graphforge/passes/liveness.hpp"
#include "graphforge/passes/memory_plan.hpp"
#include "graphforge/passes/partition.hpp"
#include "graphforge/passes/pipeline.hpp"
#include "graphforge/runtime/executable.hpp"
#include "graphforge/runtime/fallback.hpp"
#include "graphforge/serialize/serialize.hpp"
#include "oracles.hpp"
#include "random_graph.hpp"

using namespace graphforge;
namespace fs = std::filesystem;

namespace
{
    constexpr size_t graph_count = 200;

    /// First failure wins; detail is printed either way.
    struct Verdict
    {
        std::optional<std::string> failure;
        std::string detail;

        void fail(const std::string& why)
        {
            if (!failure)
                failure = why;
        }
    };

    std::string preview(const Function& fn)
    {
        std::string text = test::describe(fn);
        return text.size() > 2000 ? text.substr(0, 2000) + "..." : text;
    }

    std::vector<Function> generated_graphs(ElementType et, uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        test::GraphOptions options;
        options.element_type = et;
        std::vector<Function> graphs;
        for (size_t i = 0; i < graph_count; ++i)
            graphs.push_back(test::random_function(rng, options));
        return graphs;
    }

    const std::vector<Function>& f64_graphs()
    {
        static const std::vector<Function> graphs = generated_graphs(ElementType::F64, 2024);
        return graphs;
    }

    const std::vector<Function>& f32_graphs()
    {
        static const std::vector<Function> graphs = generated_graphs(ElementType::F32, 4048);
        return graphs;
    }

    std::vector<TensorValue> run_plain(const Function& fn, const std::vector<TensorValue>& in)
    {
        return call(compile(fn, {false, ConvLayout::Identity}), in);
    }

    // Gradient correctness

    /// sum(body * w) over every axis for a fixed random w.
    NodeId dot_loss(Function& fn, Input body, std::mt19937_64& rng)
    {
        TensorDescriptor desc = fn.descriptor(body);
        auto w = test::random_tensor(desc, Layout::identity(desc.shape.rank()), rng);
        NodeId c = fn.add_node(op::constant(desc.shape, w.to_row_major<double>()), {});
        NodeId m = fn.add_node(op::multiply(), {body, Input{c}});
        AxisSet all;
        for (size_t i = 0; i < desc.shape.rank(); ++i)
            all.insert(i);
        return fn.add_node(op::sum(all), {Input{m}});
    }

    struct GradCase
    {
        std::string name;
        std::function<Function(std::mt19937_64&)> build;
        double lo = -2;
        double hi = 2;
    };

    std::vector<GradCase> gradient_cases()
    {
        std::vector<GradCase> cases;
        auto unary = [](Op op) {
            return [op](std::mt19937_64& rng) {
                Function fn;
                NodeId x = fn.add_parameter(ElementType::F64, {2, 3});
                fn.add_result(dot_loss(fn, Input{fn.add_node(op, {x})}, rng));
                return fn;
            };
        };
        auto binary = [](Op op) {
            return [op](std::mt19937_64& rng) {
                Function fn;
                NodeId x = fn.add_parameter(ElementType::F64, {3, 2});
                NodeId y = fn.add_parameter(ElementType::F64, {3, 2});
                fn.add_result(dot_loss(fn, Input{fn.add_node(op, {x, y})}, rng));
                return fn;
            };
        };
        cases.push_back({"Add", binary(op::add())});
        cases.push_back({"Subtract", binary(op::subtract())});
        cases.push_back({"Multiply", binary(op::multiply())});
        cases.push_back({"Divide", binary(op::divide()), 0.5, 2});
        cases.push_back({"Maximum", binary(op::maximum())});
        cases.push_back({"Negate", unary(op::negate())});
        cases.push_back({"Exp", unary(op::exp())});
        cases.push_back({"Log", unary(op::log()), 0.5, 3});
        cases.push_back({"Tanh", unary(op::tanh())});
        cases.push_back({"Sigmoid", unary(op::sigmoid())});
        cases.push_back({"Relu", unary(op::relu())});
        cases.push_back({"Dot", [](std::mt19937_64& rng) {
                             Function fn;
                             NodeId a = fn.add_parameter(ElementType::F64, {2, 4});
                             NodeId b = fn.add_parameter(ElementType::F64, {4, 3});
                             fn.add_result(dot_loss(fn, Input{fn.add_node(op::dot(), {a, b})}, rng));
                             return fn;
                         }});
        cases.push_back({"Broadcast", [](std::mt19937_64& rng) {
                             Function fn;
                             NodeId a = fn.add_parameter(ElementType::F64, {3, 2});
                             Input b{fn.add_node(op::broadcast({4, 3, 5, 2}, {0, 2}), {a})};
                             fn.add_result(dot_loss(fn, b, rng));
                             return fn;
                         }});
        cases.push_back({"Sum", [](std::mt19937_64& rng) {
                             Function fn;
                             NodeId a = fn.add_parameter(ElementType::F64, {2, 3, 4});
                             fn.add_result(dot_loss(fn, Input{fn.add_node(op::sum({1}), {a})}, rng));
                             return fn;
                         }});
        cases.push_back({"Reshape", [](std::mt19937_64& rng) {
                             Function fn;
                             NodeId a = fn.add_parameter(ElementType::F64, {2, 3, 4});
                             Input t{fn.add_node(op::reshape({1, 2, 0}, {6, 2, 2}), {a})};
                             fn.add_result(dot_loss(fn, t, rng));
                             return fn;
                         }});
        cases.push_back({"Conv2D", [](std::mt19937_64& rng) {
                             Function fn;
                             NodeId x = fn.add_parameter(ElementType::F64, {2, 3, 5, 4});
                             NodeId w = fn.add_parameter(ElementType::F64, {2, 3, 2, 3});
                             Input c{fn.add_node(op::conv2d({1, 1}, {0, 1, 1, 1}), {x, w})};
                             fn.add_result(dot_loss(fn, c, rng));
                             return fn;
                         }});
        cases.push_back({"Softmax", [](std::mt19937_64& rng) {
                             Function fn;
                             NodeId x = fn.add_parameter(ElementType::F64, {3, 4});
                             fn.add_result(dot_loss(fn, Input{build_softmax(fn, x, 1)}, rng));
                             return fn;
                         }});
        cases.push_back({"MLP", [](std::mt19937_64& rng) {
                             Function fn("mlp");
                             NodeId x = fn.add_parameter(ElementType::F64, {4, 3});
                             NodeId w1 = fn.add_parameter(ElementType::F64, {3, 6});
                             NodeId w2 = fn.add_parameter(ElementType::F64, {6, 3});
                             NodeId h = fn.add_node(op::relu(), {Input{fn.add_node(op::dot(), {x, w1})}});
                             NodeId logits = fn.add_node(op::dot(), {h, w2});
                             NodeId probs = build_softmax(fn, Input{logits}, 1);
                             fn.add_result(dot_loss(fn, Input{probs}, rng));
                             return fn;
                         }});
        return cases;
    }

    Verdict gradient_correctness()
    {
        Verdict v;
        std::mt19937_64 rng(101);
        double worst = 0;
        size_t points = 0;
        size_t resampled = 0;
        auto cases = gradient_cases();
        for (const auto& c : cases)
        {
            Function fn = c.build(rng);
            size_t checked = 0;
            for (int attempt = 0; attempt < 1000 && checked < 20; ++attempt)
            {
                std::vector<TensorValue> point;
                for (NodeId p : fn.parameters())
                    point.push_back(test::random_tensor(fn.descriptor(Input{p}), fn.layout(Input{p}), rng, c.lo, c.hi));
                if (test::near_kink(fn, point, 1e-4))
                {
                    ++resampled;
                    continue;
                }
                double err = test::gradient_relative_error(fn, point, 1e-6);
                worst = std::max(worst, err);
                if (!(err < 1e-5))
                    v.fail(c.name + ": relative error " + std::to_string(err));
                ++checked;
                ++points;
            }
            if (checked < 20)
                v.fail(c.name + ": only " + std::to_string(checked) + " kink-free points");
        }
        std::ostringstream os;
        os << cases.size() << " cases, " << points << " points, " << resampled
           << " resampled, max rel err " << worst;
        v.detail = os.str();
        return v;
    }

    // Pass soundness

    std::vector<std::vector<std::string>> pipelines()
    {
        const std::vector<std::string> names{"simplify", "cse", "fold", "layouts"};
        std::vector<std::vector<std::string>> out;
        for (unsigned mask = 0; mask < 16; ++mask)
        {
            std::vector<std::string> chosen;
            for (size_t i = 0; i < names.size(); ++i)
                if (mask & (1u << i))
                    chosen.push_back(names[i]);
            std::sort(chosen.begin(), chosen.end());
            do
                out.push_back(chosen);
            while (std::next_permutation(chosen.begin(), chosen.end()));
        }
        return out;
    }

    std::string join(const std::vector<std::string>& names)
    {
        std::string s;
        for (const auto& n : names)
            s += (s.empty() ? "" : ",") + n;
        return s.empty() ? "(none)" : s;
    }

    Verdict pass_soundness()
    {
        Verdict v;
        auto all = pipelines();
        auto prefs = LayoutPreferences::channels_last_conv();
        size_t runs = 0;
        double worst64 = 0, worst32 = 0;
        std::mt19937_64 rng(202);
        for (auto et : {ElementType::F64, ElementType::F32})
        {
            const auto& graphs = et == ElementType::F64 ? f64_graphs() : f32_graphs();
            double tolerance = et == ElementType::F64 ? 1e-12 : 1e-6;
            double& worst = et == ElementType::F64 ? worst64 : worst32;
            for (const auto& fn : graphs)
            {
                auto in = test::random_inputs(fn, rng);
                auto base = run_plain(fn, in);
                for (const auto& names : all)
                {
                    Function opt = run_pipeline(fn, names, prefs);
                    if (!validate_function(opt).empty())
                    {
                        v.fail("invalid output of " + join(names) + " on\n" + preview(fn));
                        continue;
                    }
                    auto out = run_plain(opt, in);
                    ++runs;
                    double diff = test::max_abs_difference(base, out);
                    worst = std::max(worst, diff);
                    if (!(diff <= tolerance))
                        v.fail(join(names) + " differs by " + std::to_string(diff) + " on\n" + preview(fn));
                    if (names == std::vector<std::string>{"fold"} && !test::same_bits(base, out))
                        v.fail("fold not bit-equal on\n" + preview(fn));
                }
            }
        }
        std::ostringstream os;
        os << 2 * graph_count << " graphs (f64+f32) x " << all.size() << " pipelines, " << runs
           << " runs, max diff f64 " << worst64 << " f32 " << worst32;
        v.detail = os.str();
        return v;
    }

    // Memory plan validity

    Function exp_chain(size_t intermediates, size_t elements)
    {
        Function fn("chain");
        NodeId x = fn.add_parameter(ElementType::F64, {elements});
        NodeId last = x;
        for (size_t i = 0; i <= intermediates; ++i)
            last = fn.add_node(op::exp(), {last});
        fn.add_result(last);
        return fn;
    }

    Verdict memory_plan_validity()
    {
        Verdict v;
        size_t plans = 0;
        for (const auto& fn : f64_graphs())
        {
            for (bool optimize : {false, true})
            {
                Executable exe = compile(fn, {optimize, ConvLayout::Identity});
                if (auto problem = test::check_plan(exe.function(), exe.plan()))
                    v.fail(*problem + " on\n" + preview(fn));
                ++plans;
            }
            if (auto problem = test::check_plan(fn, plan_memory(fn)))
                v.fail(*problem + " on\n" + preview(fn));
            ++plans;
        }
        for (size_t n = 2; n <= 50; ++n)
        {
            for (size_t elements : {1u, 8u, 100u})
            {
                Function fn = exp_chain(n, elements);
                MemoryPlan plan = plan_memory(fn);
                size_t slot = align_up(elements * sizeof(double), plan.alignment);
                if (plan.arena_size != 2 * slot)
                    v.fail("chain n=" + std::to_string(n) + ": arena " + std::to_string(plan.arena_size) +
                           " != " + std::to_string(2 * slot));
                if (auto problem = test::check_plan(fn, plan))
                    v.fail(*problem);
            }
        }
        v.detail = std::to_string(plans) + " plans checked pairwise, chains n=2..50 at 2 slots";
        return v;
    }

    // Liveness

    Verdict liveness_oracle()
    {
        Verdict v;
        size_t intervals = 0;
        for (const auto& fn : f64_graphs())
        {
            auto got = liveness(fn);
            intervals += got.size();
            if (got != test::reference_liveness(fn))
                v.fail("interval mismatch on\n" + preview(fn));
            Executable exe = compile(fn);
            if (liveness(exe.function()) != test::reference_liveness(exe.function()))
                v.fail("interval mismatch after optimization on\n" + preview(fn));
        }
        v.detail = std::to_string(graph_count) + " graphs (+ optimized), " + std::to_string(intervals) +
                   " intervals";
        return v;
    }

    // Partition contracts

    Verdict partition_contracts()
    {
        Verdict v;
        std::mt19937_64 rng(303);
        size_t brute = 0;
        size_t groups = 0;
        for (const auto& fn : f64_graphs())
        {
            std::set<OpKind> kinds;
            for (int k = 0; k <= static_cast<int>(OpKind::ConvertLayout); ++k)
                if (rng() % 2)
                    kinds.insert(static_cast<OpKind>(k));
            auto supported = supports_ops(kinds);
            Partitioning p = partition(fn, supported);
            groups += p.groups.size();
            if (auto problem = test::check_partition(fn, supported, p))
                v.fail(*problem + " on\n" + preview(fn));
            if (fn.node_count() <= 15)
            {
                ++brute;
                if (auto problem = test::check_partition_maximal(fn, p))
                    v.fail(*problem + " on\n" + preview(fn));
            }
            auto in = test::random_inputs(fn, rng);
            if (!test::same_bits(run_with_fallback(fn, supported, in), run_plain(fn, in)))
                v.fail("run_with_fallback differs on\n" + preview(fn));
        }
        if (brute < 20)
            v.fail("only " + std::to_string(brute) + " instances small enough for brute force");
        v.detail = std::to_string(graph_count) + " pairs, " + std::to_string(groups) + " groups, " +
                   std::to_string(brute) + " brute-forced";
        return v;
    }

    // Layout transparency

    struct ConvNet
    {
        Shape data;
        Shape filter1;
        Shape filter2;
        std::array<size_t, 2> strides2;
    };

    ConvNet random_conv_net(std::mt19937_64& rng)
    {
        size_t n = 1 + rng() % 2, c = 1 + rng() % 3, h = 4 + rng() % 4, w = 4 + rng() % 4;
        size_t k1 = 1 + rng() % 3, k2 = 1 + rng() % 3;
        return {{n, c, h, w}, {k1, c, 3, 2}, {k2, k1, 2, 2}, {1 + rng() % 2, 1 + rng() % 2}};
    }

    /// conv -> relu -> strided conv -> tanh, plus a spatial Sum. With
    /// data_order set, x arrives in that layout and is converted explicitly.
    Function build_conv_net(const ConvNet& net, std::optional<AxisVector> data_order = std::nullopt)
    {
        Function fn("convnet");
        NodeId x = data_order ? fn.add_parameter(ElementType::F64, net.data, Layout{*data_order})
                              : fn.add_parameter(ElementType::F64, net.data);
        NodeId f1 = fn.add_parameter(ElementType::F64, net.filter1);
        NodeId f2 = fn.add_parameter(ElementType::F64, net.filter2);
        Input data{x};
        if (data_order)
            data = Input{fn.add_node(op::convert_layout(identity_order(4)), {x})};
        NodeId c1 = fn.add_node(op::conv2d({1, 1}, {1, 1, 0, 1}), {data, f1});
        NodeId r1 = fn.add_node(op::relu(), {c1});
        NodeId c2 = fn.add_node(op::conv2d(net.strides2, {0, 1, 1, 0}), {r1, f2});
        NodeId t = fn.add_node(op::tanh(), {c2});
        fn.add_result(t);
        fn.add_result(fn.add_node(op::sum({2, 3}), {t}));
        return fn;
    }

    struct Shell
    {
        int code = -1;
        std::string out;
    };

    Shell shell(const std::string& command, const fs::path& dir)
    {
        fs::path out = dir / "stdout.txt";
        int status = std::system((command + " >" + out.string() + " 2>/dev/null").c_str());
        std::ifstream in(out, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
    }

    std::string slurp(const fs::path& path)
    {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    /// The same network through the command-line driver under both env values.
    void conv_layout_via_cli(Verdict& v, std::mt19937_64& rng)
    {
        fs::path dir = fs::temp_directory_path() / ("graphforge_acceptance_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
        Function fn = build_conv_net(random_conv_net(rng));
        std::ofstream(dir / "net.gf.json") << print_function(fn);
        std::string args = " run '" + (dir / "net.gf.json").string() + "'";
        auto in = test::random_inputs(fn, rng);
        for (size_t k = 0; k < in.size(); ++k)
        {
            fs::path p = dir / ("in" + std::to_string(k) + ".tensor.json");
            std::ofstream(p) << print_tensor(in[k]);
            args += " -i '" + p.string() + "'";
        }
        std::vector<std::vector<TensorValue>> outs;
        for (std::string layout : {"identity", "nhwc"})
        {
            fs::path out = dir / layout;
            auto r = shell("GRAPHFORGE_CONV_LAYOUT=" + layout + " " GRAPHFORGE_CLI + args + " -o '" +
                               out.string() + "'",
                           dir);
            if (r.code != 0)
            {
                v.fail("graphforge run exited " + std::to_string(r.code) + " under " + layout);
                fs::remove_all(dir);
                return;
            }
            outs.push_back({parse_tensor(slurp(out / "result0.tensor.json")),
                            parse_tensor(slurp(out / "result1.tensor.json"))});
        }
        double diff = test::max_abs_difference(outs[0], outs[1]);
        if (!(diff <= 1e-12))
            v.fail("CLI identity vs nhwc differ by " + std::to_string(diff));
        fs::remove_all(dir);
    }

    Verdict layout_transparency()
    {
        Verdict v;
        std::mt19937_64 rng(404);
        double worst = 0;
        size_t nets = 50;
        for (size_t trial = 0; trial < nets; ++trial)
        {
            ConvNet net = random_conv_net(rng);
            Function fn = build_conv_net(net);
            auto in = test::random_inputs(fn, rng);
            auto identity = call(compile(fn, {true, ConvLayout::Identity}), in);
            auto nhwc = call(compile(fn, {true, ConvLayout::ChannelsLast}), in);
            double diff = test::max_abs_difference(identity, nhwc);
            worst = std::max(worst, diff);
            if (!(diff <= 1e-12))
                v.fail("identity vs nhwc differ by " + std::to_string(diff) + " on\n" + preview(fn));
            for (size_t i = 0; i < identity.size(); ++i)
                if (identity[i].layout() != nhwc[i].layout())
                    v.fail("result layout depends on conv preference");

            AxisVector order = identity_order(4);
            std::shuffle(order.begin(), order.end(), rng);
            Function permuted = build_conv_net(net, order);
            auto pin = in;
            pin[0] = in[0].with_layout(Layout{order});
            for (ConvLayout pref : {ConvLayout::Identity, ConvLayout::ChannelsLast})
            {
                auto base = call(compile(fn, {true, pref}), in);
                auto got = call(compile(permuted, {true, pref}), pin);
                if (!test::same_bits(base, got))
                    v.fail("permuted input + ConvertLayout not bit-equal on\n" + preview(permuted));
            }
        }
        conv_layout_via_cli(v, rng);
        std::ostringstream os;
        os << nets << " conv nets, max identity/nhwc diff " << worst << ", CLI env checked";
        v.detail = os.str();
        return v;
    }

    // Determinism and round-trip

    bool byte_identical(const std::vector<TensorValue>& a, const std::vector<TensorValue>& b)
    {
        if (a.size() != b.size())
            return false;
        for (size_t i = 0; i < a.size(); ++i)
            if (!a[i].bit_equal(b[i]))
                return false;
        return true;
    }

    Verdict determinism_round_trip()
    {
        Verdict v;
        std::mt19937_64 rng(505);
        size_t documents = 0;
        for (const auto* graphs : {&f64_graphs(), &f32_graphs()})
        {
            for (const auto& fn : *graphs)
            {
                auto in = test::random_inputs(fn, rng);
                Executable first = compile(fn);
                Executable second = compile(fn);
                if (first.listing() != second.listing() ||
                    format_plan(first.plan(), first.function()) != format_plan(second.plan(), second.function()))
                    v.fail("compile not deterministic on\n" + preview(fn));
                auto a = call(first, in);
                auto b = call(first, in);
                auto c = call(second, in);
                if (!byte_identical(a, b) || !byte_identical(a, c))
                    v.fail("call not byte-identical on\n" + preview(fn));

                std::vector<Function> variants{fn, run_pipeline(fn, {"simplify", "cse", "fold", "layouts"},
                                                                LayoutPreferences::channels_last_conv())};
                for (const auto& g : variants)
                {
                    std::string text = print_function(g);
                    Function parsed = parse_function(text);
                    std::string again = print_function(parsed);
                    ++documents;
                    if (!test::same_structure(parsed, g))
                        v.fail("parse(print(fn)) != fn on\n" + text);
                    if (again != text || print_function(g) != text)
                        v.fail("printer not a fixpoint on\n" + text);
                }
                for (const auto& t : in)
                {
                    std::string text = print_tensor(t);
                    if (print_tensor(parse_tensor(text)) != text)
                        v.fail("tensor document not a fixpoint:\n" + text);
                }
            }
        }
        v.detail = std::to_string(2 * graph_count) + " graphs compiled and called repeatedly, " +
                   std::to_string(documents) + " documents round-tripped";
        return v;
    }
}

int main()
{
    struct Criterion
    {
        const char* name;
        Verdict (*check)();
    };
    const Criterion criteria[] = {
        {"gradient correctness", gradient_correctness},
        {"pass soundness", pass_soundness},
        {"memory plan validity", memory_plan_validity},
        {"liveness oracle equality", liveness_oracle},
        {"partition contracts", partition_contracts},
        {"layout transparency", layout_transparency},
        {"determinism and round-trip", determinism_round_trip},
    };
    int failures = 0;
    for (const auto& c : criteria)
    {
        auto start = std::chrono::steady_clock::now();
        Verdict v;
        try
        {
            v = c.check();
        }
        catch (const std::exception& e)
        {
            v.fail(std::string("exception: ") + e.what());
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (v.failure ? "FAIL " : "PASS ") << c.name << " (" << v.detail << "; "
                  << std::fixed << std::setprecision(1) << seconds << "s)" << std::defaultfloat << "\n";
        if (v.failure)
        {
            std::cout << "  " << *v.failure << "\n";
            ++failures;
        }
        std::cout.flush();
    }
    return failures == 0 ? 0 : 1;
}
