"""Full-screen chat window."""

from __future__ import annotations

from textual.app import App, ComposeResult
from textual.containers import Horizontal
from textual.widgets import Footer, Header, Input, RichLog, Static

from ..exceptions import ActParseError
from .chat import HELP, QUIT_COMMAND, STATE_COMMAND, ChatSession


class ChatTUI(App[None]):
    """Transcript on the left, dialogue state on the right, act input below."""

    CSS = """
    Horizontal {
        height: 1fr;
    }

    #transcript {
        width: 2fr;
        border: round $accent;
    }

    #state {
        width: 1fr;
        border: round $secondary;
        padding: 0 1;
    }

    Input {
        dock: bottom;
    }
    """

    TITLE = "dimdial chat"
    BINDINGS = [
        ("ctrl+q", "quit", "Quit"),
        ("ctrl+n", "new_dialogue", "New dialogue"),
        ("ctrl+s", "show_state", "State"),
    ]

    def __init__(self, session: ChatSession):
        super().__init__()
        self.session = session

    def compose(self) -> ComposeResult:
        yield Header()
        yield Horizontal(
            RichLog(id="transcript", wrap=True, markup=False),
            Static("", id="state"),
        )
        yield Input(placeholder="inform(foodtype=indian)", id="act_input")
        yield Footer()

    def on_mount(self) -> None:
        self.query_one("#transcript", RichLog).write(HELP)

    def on_input_submitted(self, event: Input.Submitted) -> None:
        """Handle a typed act or command."""
        text = event.value.strip()
        event.input.value = ""
        if not text:
            return
        if text == QUIT_COMMAND:
            self.exit()
            return
        if text == STATE_COMMAND:
            self.action_show_state()
            return
        transcript = self.query_one("#transcript", RichLog)
        if self.session.closed:
            self.notify("Dialogue closed; press ctrl+n for a new one.", severity="warning")
            return
        try:
            reply = self.session.submit(text)
        except ActParseError as e:
            self.notify(str(e), severity="error")
            return
        transcript.write(f"user: {reply.user_act.to_notation()}")
        transcript.write(reply.describe())
        self.action_show_state()
        if reply.closed:
            self.notify("Dialogue closed.")

    def action_show_state(self) -> None:
        self.query_one("#state", Static).update(self.session.state_summary())

    def action_new_dialogue(self) -> None:
        self.session.restart()
        self.query_one("#transcript", RichLog).clear()
        self.query_one("#state", Static).update("")
        self.notify("New dialogue started.")


def launch_chat_ui(session: ChatSession) -> None:
    """Launch the chat TUI."""
    ChatTUI(session).run()
