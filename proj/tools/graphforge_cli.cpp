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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "graphforge/graphforge.h"

namespace
{
    enum ExitCode
    {
        EXIT_OK = 0,
        EXIT_INVALID = 2,
        EXIT_RUNTIME = 3,
        EXIT_USAGE = 4,
    };

    struct Failure
    {
        int code;
        std::string message;
    };

    [[noreturn]] void usage(const std::string& message)
    {
        throw Failure{EXIT_USAGE, message};
    }

    int exit_code_for(gf_status status)
    {
        switch (status)
        {
        case GF_OK: return EXIT_OK;
        case GF_ERR_UNKNOWN_PASS:
        case GF_ERR_INVALID_ARGUMENT: return EXIT_USAGE;
        case GF_ERR_FOLD_FAILURE:
        case GF_ERR_EXECUTION_FAILURE:
        case GF_ERR_INTERNAL: return EXIT_RUNTIME;
        default: return EXIT_INVALID;
        }
    }

    void check(gf_status status, const std::string& context = "")
    {
        if (status != GF_OK)
        {
            std::string message = gf_status_name(status);
            if (!context.empty())
            {
                message += " (" + context + ")";
            }
            throw Failure{exit_code_for(status), message + ": " + gf_last_error()};
        }
    }

    // Owning wrappers for the C handles.

    struct FunctionHandle
    {
        gf_function* ptr = nullptr;
        FunctionHandle() = default;
        explicit FunctionHandle(gf_function* p) : ptr(p) {}
        FunctionHandle(FunctionHandle&& o) noexcept : ptr(std::exchange(o.ptr, nullptr)) {}
        FunctionHandle& operator=(FunctionHandle&& o) noexcept
        {
            std::swap(ptr, o.ptr);
            return *this;
        }
        ~FunctionHandle() { gf_function_free(ptr); }
    };

    struct TensorHandle
    {
        gf_tensor* ptr = nullptr;
        TensorHandle() = default;
        explicit TensorHandle(gf_tensor* p) : ptr(p) {}
        TensorHandle(TensorHandle&& o) noexcept : ptr(std::exchange(o.ptr, nullptr)) {}
        TensorHandle& operator=(TensorHandle&& o) noexcept
        {
            std::swap(ptr, o.ptr);
            return *this;
        }
        ~TensorHandle() { gf_tensor_free(ptr); }
    };

    struct ExecutableHandle
    {
        gf_executable* ptr = nullptr;
        ~ExecutableHandle() { gf_executable_free(ptr); }
    };

    std::string take_string(char* text)
    {
        std::string out = text;
        gf_string_free(text);
        return out;
    }

    std::string read_file(const std::string& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
        {
            usage("cannot open " + path);
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    void write_file(const std::string& path, const std::string& text)
    {
        std::ofstream out(path, std::ios::binary);
        out << text;
        if (!out)
        {
            throw Failure{EXIT_RUNTIME, "cannot write " + path};
        }
    }

    FunctionHandle load_function(const std::string& path)
    {
        std::string text = read_file(path);
        gf_function* fn = nullptr;
        check(gf_function_parse(text.c_str(), &fn), path);
        return FunctionHandle(fn);
    }

    std::string print(const FunctionHandle& fn)
    {
        char* text = nullptr;
        check(gf_function_print(fn.ptr, &text));
        return take_string(text);
    }

    gf_conv_layout conv_layout_from_env()
    {
        const char* value = std::getenv("GRAPHFORGE_CONV_LAYOUT");
        if (value == nullptr || std::string(value).empty() || std::string(value) == "identity")
        {
            return GF_CONV_LAYOUT_IDENTITY;
        }
        if (std::string(value) == "nhwc")
        {
            return GF_CONV_LAYOUT_CHANNELS_LAST;
        }
        usage(std::string("GRAPHFORGE_CONV_LAYOUT must be identity or nhwc, got \"") + value + "\"");
    }

    /// "p3" or "3" to 3.
    std::optional<size_t> parameter_index(std::string name)
    {
        if (!name.empty() && name[0] == 'p')
        {
            name = name.substr(1);
        }
        if (name.empty() || name.find_first_not_of("0123456789") != std::string::npos)
        {
            return std::nullopt;
        }
        return std::stoul(name);
    }

    std::vector<std::string> split(const std::string& csv)
    {
        std::vector<std::string> out;
        std::stringstream ss(csv);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            if (!item.empty())
            {
                out.push_back(item);
            }
        }
        return out;
    }

    const char* element_type_name(gf_element_type et)
    {
        switch (et)
        {
        case GF_F32: return "f32";
        case GF_F64: return "f64";
        case GF_I64: return "i64";
        case GF_BOOL: return "bool";
        }
        return "?";
    }

    std::string shape_string(const gf_tensor* t)
    {
        std::string s = "[";
        for (size_t i = 0; i < gf_tensor_rank(t); ++i)
        {
            s += (i ? "," : "") + std::to_string(gf_tensor_dim(t, i));
        }
        return s + "]";
    }

    // Subcommands

    int cmd_validate(const std::string& file)
    {
        load_function(file);
        std::cout << "OK\n";
        return EXIT_OK;
    }

    int cmd_run(const std::string& file,
                const std::vector<std::string>& inputs,
                const std::string& out_dir,
                bool no_optimize)
    {
        gf_conv_layout layout = conv_layout_from_env();
        FunctionHandle fn = load_function(file);
        size_t count = gf_function_parameter_count(fn.ptr);

        std::map<size_t, std::string> bound;
        size_t next = 0;
        for (const auto& binding : inputs)
        {
            size_t index;
            std::string path;
            auto eq = binding.find('=');
            if (eq == std::string::npos)
            {
                while (bound.count(next))
                    ++next;
                index = next;
                path = binding;
            }
            else
            {
                auto parsed = parameter_index(binding.substr(0, eq));
                if (!parsed)
                {
                    usage("bad input name \"" + binding.substr(0, eq) + "\"; use <k> or p<k>");
                }
                index = *parsed;
                path = binding.substr(eq + 1);
            }
            if (index >= count)
            {
                usage("input p" + std::to_string(index) + " out of range; function has " +
                      std::to_string(count) + " parameters");
            }
            if (!bound.emplace(index, path).second)
            {
                usage("input p" + std::to_string(index) + " bound twice");
            }
        }
        if (bound.size() != count)
        {
            usage("expected " + std::to_string(count) + " inputs, got " +
                  std::to_string(bound.size()));
        }

        std::vector<TensorHandle> tensors;
        for (const auto& [index, path] : bound)
        {
            std::string text = read_file(path);
            gf_tensor* t = nullptr;
            check(gf_tensor_parse(text.c_str(), &t), path);
            tensors.emplace_back(t);
        }

        gf_compile_options options{no_optimize ? 0 : 1, layout};
        ExecutableHandle exe;
        check(gf_compile(fn.ptr, &options, &exe.ptr));

        std::vector<const gf_tensor*> args;
        for (const auto& t : tensors)
        {
            args.push_back(t.ptr);
        }
        size_t result_count = gf_executable_result_count(exe.ptr);
        std::vector<gf_tensor*> raw(result_count, nullptr);
        check(gf_executable_call(exe.ptr, args.data(), args.size(), raw.data(), raw.size()));
        std::vector<TensorHandle> results;
        for (auto* t : raw)
        {
            results.emplace_back(t);
        }

        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        for (size_t i = 0; i < results.size(); ++i)
        {
            std::string path =
                (std::filesystem::path(out_dir) / ("result" + std::to_string(i) + ".tensor.json"))
                    .string();
            char* text = nullptr;
            check(gf_tensor_print(results[i].ptr, &text));
            write_file(path, take_string(text));
            std::cout << "result" << i << " " << element_type_name(gf_tensor_element_type(results[i].ptr))
                      << " " << shape_string(results[i].ptr) << " -> " << path << "\n";
        }
        return EXIT_OK;
    }

    int cmd_grad(const std::string& file, const std::string& wrt, const std::string& out)
    {
        FunctionHandle fn = load_function(file);
        std::vector<size_t> indices;
        if (wrt.empty())
        {
            for (size_t i = 0; i < gf_function_parameter_count(fn.ptr); ++i)
            {
                indices.push_back(i);
            }
        }
        for (const auto& name : split(wrt))
        {
            auto index = parameter_index(name);
            if (!index)
            {
                usage("bad parameter name \"" + name + "\"; use p<k>");
            }
            indices.push_back(*index);
        }
        gf_function* grad = nullptr;
        check(gf_function_differentiate(fn.ptr, indices.data(), indices.size(), &grad));
        FunctionHandle g(grad);
        std::string text = print(g);
        if (out.empty())
        {
            std::cout << text;
        }
        else
        {
            write_file(out, text);
            std::cout << "gradient: " << gf_function_result_count(g.ptr) << " results, seed p"
                      << gf_function_parameter_count(g.ptr) - 1 << " -> " << out << "\n";
        }
        return EXIT_OK;
    }

    int cmd_optimize(const std::string& file, const std::string& passes, const std::string& out)
    {
        gf_conv_layout layout = conv_layout_from_env();
        FunctionHandle fn = load_function(file);
        size_t before = gf_function_node_count(fn.ptr);
        std::string text = print(fn);
        // Repeat until the document stops changing so the output is a fixpoint.
        for (int round = 0; round < 32; ++round)
        {
            gf_function* next = nullptr;
            check(gf_function_optimize(fn.ptr, passes.c_str(), layout, &next));
            fn = FunctionHandle(next);
            std::string next_text = print(fn);
            if (next_text == text)
            {
                break;
            }
            text = std::move(next_text);
        }
        if (out.empty())
        {
            std::cout << text;
        }
        else
        {
            write_file(out, text);
            std::cout << "nodes: " << before << " -> " << gf_function_node_count(fn.ptr) << "\n";
        }
        return EXIT_OK;
    }

    int cmd_plan(const std::string& file, bool no_optimize)
    {
        gf_conv_layout layout = conv_layout_from_env();
        FunctionHandle fn = load_function(file);
        gf_compile_options options{no_optimize ? 0 : 1, layout};
        ExecutableHandle exe;
        check(gf_compile(fn.ptr, &options, &exe.ptr));
        char* text = nullptr;
        check(gf_executable_plan(exe.ptr, &text));
        std::cout << take_string(text);
        return EXIT_OK;
    }

    int cmd_partition(const std::string& file, const std::string& supported)
    {
        FunctionHandle fn = load_function(file);
        char* text = nullptr;
        check(gf_function_partition(fn.ptr, supported.c_str(), &text));
        std::cout << take_string(text);
        return EXIT_OK;
    }

    int cmd_dot(const std::string& file)
    {
        FunctionHandle fn = load_function(file);
        char* text = nullptr;
        check(gf_function_dot(fn.ptr, &text));
        std::cout << take_string(text);
        return EXIT_OK;
    }
}

int main(int argc, char** argv)
{
    CLI::App app{"graphforge: tensor graph compiler driver"};
    app.require_subcommand(1);

    std::string file;
    std::vector<std::string> inputs;
    std::string out;
    std::string out_dir = ".";
    std::string wrt;
    std::string passes = "simplify,cse,fold";
    std::string supported;
    bool no_optimize = false;

    auto* validate = app.add_subcommand("validate", "Parse and validate a function document");
    validate->add_option("file", file, "*.gf.json file")->required();

    auto* run = app.add_subcommand("run", "Compile and execute a function");
    run->add_option("file", file, "*.gf.json file")->required();
    run->add_option("--input,-i", inputs, "Input tensor as <k>=file, p<k>=file or file")
        ->allow_extra_args(false);
    run->add_option("--out,-o", out_dir, "Directory for result<k>.tensor.json");
    run->add_flag("--no-optimize", no_optimize, "Skip the optimization pipeline");

    auto* grad = app.add_subcommand("grad", "Write the gradient function");
    grad->add_option("file", file, "*.gf.json file")->required();
    grad->add_option("--wrt", wrt, "Parameters, e.g. p0,p1 (default: all)");
    grad->add_option("--out,-o", out, "Output file (default: stdout)");

    auto* optimize = app.add_subcommand("optimize", "Run optimization passes");
    optimize->add_option("file", file, "*.gf.json file")->required();
    optimize->add_option("--passes", passes, "Comma-separated: simplify,cse,fold,layouts");
    optimize->add_option("--out,-o", out, "Output file (default: stdout)");

    auto* plan = app.add_subcommand("plan", "Print liveness intervals and arena offsets");
    plan->add_option("file", file, "*.gf.json file")->required();
    plan->add_flag("--no-optimize", no_optimize, "Skip the optimization pipeline");

    auto* part = app.add_subcommand("partition", "Print backend partition groups");
    part->add_option("file", file, "*.gf.json file")->required();
    part->add_option("--supported", supported, "Comma-separated op names for the main backend");

    auto* dot = app.add_subcommand("dot", "Print Graphviz text");
    dot->add_option("file", file, "*.gf.json file")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return EXIT_USAGE;
    }

    try
    {
        if (validate->parsed())
            return cmd_validate(file);
        if (run->parsed())
            return cmd_run(file, inputs, out_dir, no_optimize);
        if (grad->parsed())
            return cmd_grad(file, wrt, out);
        if (optimize->parsed())
            return cmd_optimize(file, passes, out);
        if (plan->parsed())
            return cmd_plan(file, no_optimize);
        if (part->parsed())
            return cmd_partition(file, supported);
        if (dot->parsed())
            return cmd_dot(file);
    }
    catch (const Failure& f)
    {
        std::cerr << "graphforge: " << f.message << "\n";
        return f.code;
    }
    catch (const std::exception& e)
    {
        std::cerr << "graphforge: " << e.what() << "\n";
        return EXIT_RUNTIME;
    }
    return EXIT_USAGE;
}
