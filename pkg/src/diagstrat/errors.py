"""Error type shared by every module.

Each error carries a stable machine code (``INVALID_CHAR``, ``TYPE_MISMATCH``
and so on) so the CLI can report failures without parsing messages.
"""


class DiagstratError(Exception):
    def __init__(self, code, message=""):
        super().__init__(f"{code}: {message}" if message else code)
        self.code = code
        self.message = message
