"""Interactive session: a human types user acts, the manager answers."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from ..acts import DialogueAct, parse_act_notation
from ..exceptions import ActParseError
from ..manager import DialogueManager, SystemTurnRecord
from ..state import NBestList

PROMPT = "user> "
QUIT_COMMAND = ":quit"
STATE_COMMAND = ":state"

HELP = (
    "Type user acts in act notation, e.g. inform(foodtype=indian), "
    "request(phonenumber), bye(). "
    f"{STATE_COMMAND} shows the dialogue state, {QUIT_COMMAND} leaves."
)


@dataclass(frozen=True)
class ChatReply:
    user_act: DialogueAct
    record: SystemTurnRecord
    system_act: DialogueAct | None
    closed: bool

    def describe(self) -> str:
        text = "(no output)" if self.system_act is None else self.system_act.to_notation()
        return f"system: {text}" + ("  [dialogue closed]" if self.closed else "")


class ChatSession:
    """One dialogue with a greedy manager; typed acts are taken as certain."""

    def __init__(self, manager: DialogueManager, rng: np.random.Generator) -> None:
        self.manager = manager
        self.rng = rng
        self.closed = False
        self.manager.reset()

    def restart(self) -> None:
        self.manager.reset()
        self.closed = False

    def submit(self, text: str) -> ChatReply:
        """Feed one typed user act through the manager.

        Raises:
            ActParseError: If ``text`` is not a valid user act.
        """
        act = parse_act_notation(text, self.manager.ontology, user_only=True)
        self.manager.observe(NBestList.certain(act))
        record, system_act = self.manager.respond(0.0, self.rng)
        self.closed = self.manager.closing
        return ChatReply(act, record, system_act, self.closed)

    def state_summary(self) -> str:
        return json.dumps(self.manager.state.to_record(), indent=2, sort_keys=True)


def run_chat(session: ChatSession, stdin: TextIO, stdout: TextIO) -> int:
    """Plain terminal loop; returns the exit status."""
    print(HELP, file=stdout)
    while not session.closed:
        print(PROMPT, end="", file=stdout, flush=True)
        line = stdin.readline()
        if not line:
            break
        text = line.strip()
        if not text:
            continue
        if text == QUIT_COMMAND:
            break
        if text == STATE_COMMAND:
            print(session.state_summary(), file=stdout)
            continue
        try:
            reply = session.submit(text)
        except ActParseError as e:
            print(f"Error: {e}", file=stdout)
            continue
        print(reply.describe(), file=stdout)
    return 0
