import threading
import time

from rich.console import Console


class LoadingAnimation(threading.Thread):
    """Bouncing progress bar printed on one line while a long computation runs.

    Used as a context manager; the title can be updated while it runs (e.g. the last finished knot).
    """

    def __init__(self, title="Loading", total_width=5, bar_char="■", sleep_time=0.1, silent=False):
        threading.Thread.__init__(self, daemon=True)
        self.title = title
        self.total_width = total_width
        self.bar_char = bar_char
        self.sleep_time = sleep_time
        self.console = Console(stderr=True)
        self.position = 0
        self.position_direction = 1
        self.silent = silent or not self.console.is_terminal
        self._stop_event = threading.Event()

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, *args):
        self.stop()

    def stop(self):
        self._stop_event.set()
        if self.is_alive():
            self.join()
        if not self.silent:
            self.console.print(" " * (len(self.title) + self.total_width + 1), end="\r")

    def stopped(self):
        return self._stop_event.is_set()

    def run(self):
        if self.silent:
            return
        while not self.stopped():
            self.move()
            time.sleep(self.sleep_time)

    def move(self):
        bar = (" " * self.position) + self.bar_char + (" " * (self.total_width - self.position - 1))
        self.console.print(self.title + " " + bar, end="\r", style="bold green", markup=False)
        if not (self.position + 1) % self.total_width:
            self.position_direction *= -1
        self.position += self.position_direction
