import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Generic, Type, TypeVar, Union

from pydantic import BaseModel

from polymem.exceptions.errors import InputFileError

SchemaType = TypeVar("SchemaType", bound=BaseModel)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def dumps(document: Union[BaseModel, Any]) -> str:
    """
    Serialize deterministically: camelCase keys, sorted, two-space indent.

    Args:
        document: Schema instance or plain JSON-compatible data

    Returns:
        JSON text ending in a newline
    """
    data = document.dict(by_alias=True) if isinstance(document, BaseModel) else document
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def read_json(path: PathLike) -> Any:
    """
    Read a JSON document.

    Raises:
        InputFileError: If the file is missing or unreadable
        json.JSONDecodeError: If the content is not JSON
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputFileError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return json.loads(text)


def write_atomic(path: PathLike, text: str) -> None:
    """Write text through a temporary file in the same directory and rename it into place."""
    target = Path(path)
    directory = target.parent if str(target.parent) else Path(".")
    fd, temporary = tempfile.mkstemp(dir=directory, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(temporary, target)
    except BaseException:
        if os.path.exists(temporary):
            os.unlink(temporary)
        raise
    logger.info(f"Wrote {target}")


class JsonRepository(Generic[SchemaType]):
    """
    File repository for one schema type.

    Loads validate through the schema; saves are atomic.
    """

    def __init__(self, schema: Type[SchemaType]):
        """
        Initialize the repository with the schema class.

        Args:
            schema: Pydantic model used to parse and serialize documents
        """
        self.schema = schema

    def load(self, path: PathLike) -> SchemaType:
        """
        Load and validate a document.

        Args:
            path: JSON file

        Returns:
            Parsed schema instance
        """
        return self.schema.parse_obj(read_json(path))

    def save(self, path: PathLike, document: SchemaType) -> None:
        write_atomic(path, dumps(document))
