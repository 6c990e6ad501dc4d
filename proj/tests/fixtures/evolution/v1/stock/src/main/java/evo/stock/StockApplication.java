package evo.stock;

@org.springframework.boot.autoconfigure.SpringBootApplication
public class StockApplication {
    public static void main(String[] args) {
    }
}
