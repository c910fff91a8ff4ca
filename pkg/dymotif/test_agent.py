import json
import threading
import urllib.request

import pytest

from dymotif.agent import Agent, parse_react_step
from dymotif.agent.messaging import parse_action_input
from dymotif.bench import TaskKind, generate_dataset
from dymotif.evaluation import render_prompt, score_instance
from dymotif.exceptions import EndpointConnectionError
from dymotif.tokens import TokenManager, TokenUsage
from dymotif.tools import ToolManager, create_logging_callbacks, tool_call_for
from dymotif.tools.server import create_server

TOOL_TASKS = [TaskKind.DETECTION, TaskKind.CONSTRUCTION, TaskKind.MULTI_DETECT,
              TaskKind.OCCURRENCE, TaskKind.MULTI_COUNT]


def one_call_script(instances):
    """Issue the canonical tool call, then repeat the observation as the final answer."""
    by_question = {render_prompt(i).text: i for i in instances}

    def reply(system, messages):
        last = messages[-1]["content"]
        if last.startswith("Observation:"):
            return f"Thought: the tool answered.\nFinal Answer: {last[len('Observation:'):].strip()}"
        name, tool_input = tool_call_for(by_question[messages[0]["content"]])
        return f"Thought: use {name}.\nAction: {name}\nAction Input: {json.dumps(tool_input)}"
    return reply


@pytest.mark.parametrize("task", TOOL_TASKS)
def test_scripted_agent_matches_ground_truth(task, scripted_client):
    motif = {TaskKind.DETECTION: "triangle", TaskKind.CONSTRUCTION: "4-cycle"}.get(task)
    instances = generate_dataset(task, motif, 10, seed=13)
    client = scripted_client(one_call_script(instances))
    agent = Agent(client)
    for instance in instances:
        answer = agent.run(instance)
        assert not answer.unresolved and answer.error is None
        assert score_instance(instance, answer.parsed).value == 1.0
        assert len(answer.transcript) == 2
        assert answer.transcript[0]["action"] == tool_call_for(instance)[0]


def test_agent_token_total_is_sum_of_steps(scripted_client):
    instance = generate_dataset(TaskKind.DETECTION, "triangle", 1, seed=2)[0]
    answer = Agent(scripted_client(one_call_script([instance]))).run(instance)
    assert answer.usage == TokenUsage(20, 10)
    steps = [TokenUsage(**entry["usage"]) for entry in answer.transcript]
    assert sum(steps, TokenUsage()) == answer.usage


def test_unreadable_output_is_unresolved(scripted_client):
    instance = generate_dataset(TaskKind.DETECTION, "triangle", 1, seed=2)[0]
    client = scripted_client(["I think the answer is yes."])
    answer = Agent(client).run(instance)
    assert answer.unresolved
    assert score_instance(instance, answer.parsed).value == 0.0
    assert len(client.calls) == 2


def test_step_budget_exhaustion(scripted_client):
    instance = generate_dataset(TaskKind.DETECTION, "triangle", 1, seed=2)[0]
    name, tool_input = tool_call_for(instance)
    loop = f"Thought: check again.\nAction: {name}\nAction Input: {json.dumps(tool_input)}"
    client = scripted_client([loop])
    answer = Agent(client, max_steps=3).run(instance)
    assert answer.unresolved and answer.error is None
    assert len(client.calls) == 3
    with pytest.raises(ValueError):
        Agent(client, max_steps=0)


def test_endpoint_failure_is_an_error(scripted_client):
    instance = generate_dataset(TaskKind.DETECTION, "triangle", 1, seed=2)[0]
    client = scripted_client([EndpointConnectionError("Endpoint unreachable: refused")])
    answer = Agent(client).run(instance)
    assert answer.failed and not answer.unresolved
    assert "unreachable" in answer.error


def test_bad_tool_calls_become_error_observations():
    manager = ToolManager()
    observation, is_error = manager.call_tool("Motif_Census", {})
    assert is_error and "not found" in observation

    pattern = [["u0", "u1", "t0", "a"], ["u1", "u2", "t1", "a"], ["u2", "u0", "t2", "a"]]
    observation, is_error = manager.call_tool(
        "Motif_Detection",
        {"edge_list": [[0, 1, 0, "a"]], "motif_list": {"triangle": {"edge_pattern": pattern}}},
    )
    assert is_error and "motif_list.triangle.time_window" in observation

    observation, is_error = manager.call_tool("Motif_Detection", "not a dict")
    assert is_error


def test_tool_results():
    manager = ToolManager()
    pattern = [["u0", "u1", "t0", "a"], ["u1", "u2", "t1", "a"], ["u2", "u0", "t2", "a"]]
    edges = [[0, 1, 0, "a"], [1, 2, 1, "a"], [2, 0, 2, "a"]]
    motif = {"triangle": {"edge_pattern": pattern, "time_window": 3}}
    assert manager.call_tool("Motif_Detection", {"edge_list": edges, "motif_list": motif}) == ("Yes", False)
    assert manager.call_tool("Multi_Motif_Count", {"edge_list": edges, "motif_definitions": motif}) == (
        "[(triangle, 1)]", False,
    )
    assert manager.call_tool("Motif_Occurrence_Prediction",
                             {"edge_list": edges, "motif_definitions": motif}) == ("[(triangle, 2)]", False)
    assert len(manager.get_tool_schemas()) == 5


def test_tool_callbacks():
    seen = []

    def pre(tool_name, tool_input):
        seen.append(tool_name)

    def post(tool_name, tool_input, result):
        return result.upper()

    manager = ToolManager(pre_callback=pre, post_callback=post)
    observation, _ = manager.call_tool("Motif_Census", {})
    assert seen == [] and observation.startswith("Error")

    motif = {"triangle": {"edge_pattern": [["u0", "u1", "t0", "a"], ["u1", "u2", "t1", "a"],
                                           ["u2", "u0", "t2", "a"]], "time_window": 3}}
    observation, _ = manager.call_tool("Motif_Detection", {"edge_list": [], "motif_list": motif})
    assert seen == ["Motif_Detection"] and observation == "NO"

    with pytest.raises(ValueError):
        ToolManager(pre_callback=lambda name: None)
    callbacks = create_logging_callbacks()
    ToolManager(pre_callback=callbacks["pre_tool"], post_callback=callbacks["post_tool"])


def test_parse_react_step():
    step = parse_react_step('Thought: look it up\nAction: Motif_Detection\nAction Input: {"edge_list": []}')
    assert step.action == "Motif_Detection" and step.action_input == {"edge_list": []}
    assert step.thought == "look it up"

    both = parse_react_step('Action: Motif_Detection\nAction Input: {"edge_list": []}\nFinal Answer: Yes')
    assert both.is_final and both.final_answer == "Yes"

    assert parse_react_step("Action: Motif_Detection").error == "missing Action Input"
    assert parse_react_step("Action: Motif_Detection\nAction Input: edge_list").is_failure
    assert parse_react_step("no structure here").is_failure


def test_action_input_forms():
    expected = {"edge_list": [[0, 1, 0, "a"]], "motif_list": {"triangle": {"time_window": 3}}}
    assert parse_action_input(json.dumps(expected)) == expected
    assert parse_action_input("{'edge_list': [[0, 1, 0, 'a']], 'motif_list': {'triangle': {'time_window': 3}}}") == expected
    assert parse_action_input("{edge_list: [[0, 1, 0, a]], motif_list: {triangle: {time_window: 3}}}") == expected
    assert parse_action_input("{edge_list: [[0, 1") is None


@pytest.fixture
def tool_server():
    server = create_server("127.0.0.1", 0)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield "http://%s:%s" % server.server_address[:2]
    server.shutdown()
    server.server_close()


def test_tool_server(tool_server):
    with urllib.request.urlopen(f"{tool_server}/tools") as response:
        names = [tool["name"] for tool in json.load(response)["tools"]]
    assert "Multi_Motif_Count" in names

    body = json.dumps({
        "edge_list": [[0, 1, 0, "a"], [1, 2, 1, "a"], [2, 0, 2, "a"]],
        "motif_list": {"triangle": {"edge_pattern": [["u0", "u1", "t0", "a"], ["u1", "u2", "t1", "a"],
                                                     ["u2", "u0", "t2", "a"]], "time_window": 3}},
    }).encode("utf-8")
    request = urllib.request.Request(f"{tool_server}/tools/Motif_Detection", data=body,
                                     headers={"Content-Type": "application/json"})
    with urllib.request.urlopen(request) as response:
        assert json.load(response) == {"observation": "Yes", "is_error": False}


def test_token_manager_splits_tool_steps():
    manager = TokenManager()
    manager.add_step("step_0", TokenUsage(10, 5), is_tool_related=True, tool_name="Motif_Detection")
    manager.add_step("step_1", TokenUsage(4, 2), parent_step_id="step_0")
    manager.add_step("step_2", TokenUsage(), parent_step_id="step_1")
    info = manager.get_token_usage()
    assert info.tools_usage == TokenUsage(10, 5)
    assert info.text_usage == TokenUsage(4, 2)
    assert info.by_tool == {"Motif_Detection": TokenUsage(10, 5)}
    assert manager.total().total_tokens == 21
    assert manager.get_token_usage("step_1")["parent_step_id"] == "step_0"
    manager.reset()
    assert manager.total() == TokenUsage()
