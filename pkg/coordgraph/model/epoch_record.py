from pydantic import BaseModel


class EpochRecord(BaseModel):
    epoch: int
    loss: float
    val_loss: float
    val_f1: float
