import json
import pathlib

import pytest

from deolog.documents import model_from_doc

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def appendix_path():
    return DATA / "appendix_model.json"


@pytest.fixture(scope="session")
def appendix_model(appendix_path):
    with open(appendix_path) as fh:
        return model_from_doc(json.load(fh))
