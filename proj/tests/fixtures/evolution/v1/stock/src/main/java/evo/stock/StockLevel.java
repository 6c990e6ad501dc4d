package evo.stock;

@lombok.Data
public class StockLevel {
    private String itemId;
    private int units;
}
